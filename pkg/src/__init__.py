"""GFP Miner - guided FP-growth and minority-class rule mining."""

__version__ = "0.1.0"
