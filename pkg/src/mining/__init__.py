"""FP-tree mining modules."""

from .fpgrowth import fp_growth
from .fptree import FpNode, FpTree, build_fp_tree
from .gfpgrowth import OrderMismatchError, count_itemsets, gfp_growth
from .stats import MiningStats
from .tistree import (
    TisEntry,
    TisNode,
    TisTree,
    UnrankedItemError,
    build_tis_from_target_list,
)

__all__ = [
    "FpNode",
    "FpTree",
    "MiningStats",
    "OrderMismatchError",
    "TisEntry",
    "TisNode",
    "TisTree",
    "UnrankedItemError",
    "build_fp_tree",
    "build_tis_from_target_list",
    "count_itemsets",
    "fp_growth",
    "gfp_growth",
]
