"""Synthetic data generation and benchmark modules."""

from .generator import CLASS_TOKENS, RNG_ALGORITHM, SynthConfig, generate, item_token
from .harness import (
    SCENARIOS,
    BenchmarkMismatchError,
    BenchmarkRecord,
    EngineRun,
    baseline_rules,
    run_benchmark,
    run_monte_carlo,
    summarize,
    write_bench_csv,
)

__all__ = [
    "CLASS_TOKENS",
    "RNG_ALGORITHM",
    "SCENARIOS",
    "BenchmarkMismatchError",
    "BenchmarkRecord",
    "EngineRun",
    "SynthConfig",
    "baseline_rules",
    "generate",
    "item_token",
    "run_benchmark",
    "run_monte_carlo",
    "summarize",
    "write_bench_csv",
]
