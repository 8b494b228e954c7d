"""Full FP-growth baseline versus minority-report benchmark."""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, TextIO

import numpy as np

from src.data.transactions import TransactionDb, item_counts, support_descending_order
from src.mining.fpgrowth import fp_growth
from src.mining.fptree import build_fp_tree
from src.mining.stats import MiningStats
from src.oracle.bruteforce import rule_keys
from src.rules.minority_report import (
    MraConfig,
    Rule,
    as_fraction,
    min_count_for_support,
    minority_report,
)

from .generator import RNG_ALGORITHM, SynthConfig, generate

logger = logging.getLogger(__name__)

BENCH_FIELDS = [
    "scenario",
    "seed",
    "engine",
    "rules",
    "cond_trees",
    "nodes",
    "header_probes",
    "wall_ms",
]

SCENARIOS: Dict[str, Dict[str, float]] = {
    "imbalanced": {"p_x": 0.125, "p_y": 0.01, "min_support": 5e-5},
    "moderate": {"p_x": 0.125, "p_y": 0.1, "min_support": 5e-4},
}


class BenchmarkMismatchError(RuntimeError):
    """Raised when the baseline and minority-report rule sets differ."""


@dataclass
class EngineRun:
    """Outcome of one engine on one database."""

    engine: str
    rules: List[Rule]
    stats: MiningStats


@dataclass
class BenchmarkRecord:
    """Paired baseline and minority-report runs on one database."""

    scenario: str
    seed: int
    baseline: EngineRun
    mra: EngineRun

    @property
    def wall_ratio(self) -> float:
        """Baseline wall time over minority-report wall time."""
        if self.mra.stats.wall_time <= 0:
            return float("inf")
        return self.baseline.stats.wall_time / self.mra.stats.wall_time

    def rows(self) -> List[list]:
        rows = []
        for run in (self.baseline, self.mra):
            rows.append(
                [
                    self.scenario,
                    self.seed,
                    run.engine,
                    len(run.rules),
                    run.stats.conditional_trees_built,
                    run.stats.nodes_allocated,
                    run.stats.header_probes,
                    f"{run.stats.wall_ms:.3f}",
                ]
            )
        return rows


def baseline_rules(
    db: TransactionDb, cfg: MraConfig, stats: MiningStats
) -> List[Rule]:
    """Mine class rules by full FP-growth over the whole database.

    Every itemset frequent at C* is mined, then the ones holding the class
    item become rules; the antecedent's own count (frequent by
    anti-monotonicity) gives the common-class count.
    """
    class_item = db.symbols.id_of(cfg.target_class)
    with stats.timer():
        if not len(db):
            return []
        c_star = min_count_for_support(cfg.xi, len(db))
        counts = item_counts(db)
        order = support_descending_order(db, (a for a, c in counts.items() if c >= c_star))
        tree = build_fp_tree(db, order, stats)
        tis = fp_growth(tree, c_star, stats)

        frequent: Dict[FrozenSet[int], int] = {
            frozenset(e.itemset): e.count for e in tis.enumerate() if e.target
        }
        threshold = as_fraction(cfg.minconf)
        rules = []
        for entry in tis.enumerate():
            if not entry.target or class_item not in entry.itemset:
                continue
            antecedent = tuple(a for a in entry.itemset if a != class_item)
            if not antecedent:
                continue
            count1 = entry.count
            count0 = frequent[frozenset(antecedent)] - count1
            if Fraction(count1, count1 + count0) >= threshold:
                rules.append(
                    Rule.from_counts(antecedent, class_item, count1, count0, len(db))
                )
    return rules


def run_benchmark(
    db: TransactionDb, cfg: MraConfig, scenario: str = "input", seed: int = 0
) -> BenchmarkRecord:
    """Run both engines on db and check that they agree.

    Raises:
        BenchmarkMismatchError: If the two rule sets differ
    """
    baseline_stats = MiningStats()
    baseline = baseline_rules(db, cfg, baseline_stats)

    mra_stats = MiningStats()
    mra = minority_report(db, cfg, mra_stats)

    if rule_keys(baseline) != rule_keys(mra):
        raise BenchmarkMismatchError(
            f"{scenario} seed={seed}: baseline found {len(baseline)} rules, "
            f"minority report {len(mra)}"
        )

    record = BenchmarkRecord(
        scenario=scenario,
        seed=seed,
        baseline=EngineRun("fpgrowth", baseline, baseline_stats),
        mra=EngineRun("mra", mra, mra_stats),
    )
    logger.info(
        "%s seed=%d: %d rules, cond trees %d vs %d, wall ratio %.2f",
        scenario,
        seed,
        len(mra),
        baseline_stats.conditional_trees_built,
        mra_stats.conditional_trees_built,
        record.wall_ratio,
    )
    return record


def _run_repetition(args) -> BenchmarkRecord:
    synth, cfg, scenario = args
    return run_benchmark(generate(synth), cfg, scenario=scenario, seed=synth.seed)


def run_monte_carlo(
    synth: SynthConfig,
    cfg: MraConfig,
    repetitions: int,
    jobs: int = 1,
    scenario: str = "synthetic",
) -> List[BenchmarkRecord]:
    """Benchmark repetitions with seeds synth.seed, synth.seed + 1, ...

    Each repetition runs single-threaded; with jobs > 1 repetitions run on
    a process pool.
    """
    work = [(synth.with_seed(synth.seed + i), cfg, scenario) for i in range(repetitions)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_repetition, work))
    return [_run_repetition(args) for args in work]


def summarize(records: Sequence[BenchmarkRecord]) -> Dict[str, float]:
    """Mean counters per engine and the mean baseline/MRA wall-time ratio."""
    if not records:
        return {}
    summary: Dict[str, float] = {}
    for engine in ("baseline", "mra"):
        runs = [getattr(r, engine).stats for r in records]
        summary[f"{engine}_cond_trees"] = float(
            np.mean([s.conditional_trees_built for s in runs])
        )
        summary[f"{engine}_nodes"] = float(np.mean([s.nodes_allocated for s in runs]))
        summary[f"{engine}_wall_ms"] = float(np.mean([s.wall_ms for s in runs]))
    summary["wall_ratio"] = float(np.mean([r.wall_ratio for r in records]))
    summary["rules"] = float(np.mean([len(r.mra.rules) for r in records]))
    return summary


def write_bench_csv(records: Sequence[BenchmarkRecord], stream: TextIO) -> None:
    """Write the benchmark CSV, preceded by the generator algorithm line."""
    stream.write(f"# rng={RNG_ALGORITHM}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BENCH_FIELDS)
    for record in records:
        writer.writerows(record.rows())
