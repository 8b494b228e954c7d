"""Synthetic generator and FP-growth versus minority-report benchmark."""

import io
import logging
import os

import numpy as np
import pytest

from src.bench import harness
from src.bench.generator import CLASS_TOKENS, SynthConfig, generate
from src.bench.harness import (
    SCENARIOS,
    BenchmarkMismatchError,
    baseline_rules,
    run_benchmark,
    run_monte_carlo,
    summarize,
    write_bench_csv,
)
from src.data.transactions import item_counts
from src.mining.stats import MiningStats
from src.oracle.bruteforce import bf_rules, rule_keys
from src.rules.minority_report import MraConfig

logger = logging.getLogger(__name__)


def _class_fraction(db, token):
    return sum(1 for t in db if db.symbols.id_of(token) in t) / len(db)


def test_same_seed_same_db():
    cfg = SynthConfig(n_transactions=300, n_items=10, p_x=0.2, p_y=0.1, seed=42)
    first, second = generate(cfg), generate(cfg)
    assert first.transactions == second.transactions
    assert first.symbols.tokens == second.symbols.tokens
    assert generate(cfg).transactions != generate(cfg.with_seed(43)).transactions


def test_exactly_one_class_item_per_transaction():
    db = generate(SynthConfig(n_transactions=500, n_items=8, p_x=0.3, p_y=0.2, seed=1))
    class_ids = {db.symbols.id_of(tok) for tok in CLASS_TOKENS}
    assert all(len(class_ids.intersection(t)) == 1 for t in db)
    assert db.symbols.tokens[:3] == ("i0", "i1", "i2")


def test_frequencies_within_binomial_bounds():
    n, items, p_x, p_y = 25000, 60, 0.125, 0.01
    db = generate(SynthConfig(n_transactions=n, n_items=items, p_x=p_x, p_y=p_y, seed=7))

    sigma_y = np.sqrt(p_y * (1 - p_y) / n)
    assert abs(_class_fraction(db, "1") - p_y) <= 3 * sigma_y

    counts = item_counts(db)
    per_item = np.array([counts.get(j, 0) / n for j in range(items)])
    sigma_x = np.sqrt(p_x * (1 - p_x) / n)
    assert abs(per_item.mean() - p_x) <= 3 * sigma_x / np.sqrt(items)
    assert np.all(np.abs(per_item - p_x) <= 5 * sigma_x)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_transactions=10, n_items=0, p_x=0.1, p_y=0.1),
        dict(n_transactions=10, n_items=5, p_x=0.0, p_y=0.1),
        dict(n_transactions=10, n_items=5, p_x=0.1, p_y=1.0),
        dict(n_transactions=-1, n_items=5, p_x=0.1, p_y=0.1),
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        SynthConfig(**kwargs)


def test_header_records_generator():
    cfg = SynthConfig(n_transactions=5, n_items=3, p_x=0.5, p_y=0.25, seed=9)
    (header,) = cfg.header_lines()
    assert header.startswith("rng=PCG64 seed=9 ")
    assert "p_x=0.5 p_y=0.25" in header


def test_baseline_agrees_with_oracle(example_db):
    cfg = MraConfig(xi=0.125, minconf=0.2)
    rules = baseline_rules(example_db, cfg, MiningStats())
    assert rule_keys(rules) == rule_keys(bf_rules(example_db, cfg))


def test_benchmark_on_worked_example(example_db):
    record = run_benchmark(example_db, MraConfig(xi=0.125, minconf=0.2), scenario="example")
    assert len(record.baseline.rules) == len(record.mra.rules) == 5
    rows = record.rows()
    assert [row[2] for row in rows] == ["fpgrowth", "mra"]
    assert rows[1][4] == record.mra.stats.conditional_trees_built


def test_benchmark_on_balanced_data():
    db = generate(SynthConfig(n_transactions=400, n_items=10, p_x=0.2, p_y=0.5, seed=3))
    record = run_benchmark(db, MraConfig(xi=0.01, minconf=0.3))
    assert rule_keys(record.baseline.rules) == rule_keys(record.mra.rules)


def test_mismatch_is_a_hard_failure(example_db, monkeypatch):
    monkeypatch.setattr(harness, "minority_report", lambda db, cfg, stats: [])
    with pytest.raises(BenchmarkMismatchError):
        run_benchmark(example_db, MraConfig(xi=0.125, minconf=0.2))


def test_minority_report_does_less_structural_work():
    synth = SynthConfig(n_transactions=2000, n_items=20, p_x=0.125, p_y=0.01, seed=100)
    records = run_monte_carlo(synth, MraConfig(xi=0.001, minconf=0.0), repetitions=3)
    assert [r.seed for r in records] == [100, 101, 102]

    summary = summarize(records)
    assert summary["mra_nodes"] < summary["baseline_nodes"]
    assert summary["mra_cond_trees"] < summary["baseline_cond_trees"]
    logger.info("wall ratio %.2f", summary["wall_ratio"])


def test_parallel_repetitions_match_serial():
    synth = SynthConfig(n_transactions=300, n_items=8, p_x=0.2, p_y=0.1, seed=5)
    cfg = MraConfig(xi=0.02, minconf=0.0)
    serial = run_monte_carlo(synth, cfg, repetitions=2)
    parallel = run_monte_carlo(synth, cfg, repetitions=2, jobs=2)
    assert [rule_keys(r.mra.rules) for r in serial] == [
        rule_keys(r.mra.rules) for r in parallel
    ]
    assert [r.mra.stats.counters() for r in serial] == [
        r.mra.stats.counters() for r in parallel
    ]


def test_bench_csv_layout(example_db):
    record = run_benchmark(example_db, MraConfig(xi=0.125, minconf=0.2), scenario="example")
    out = io.StringIO()
    write_bench_csv([record], out)
    lines = out.getvalue().splitlines()
    assert lines[0] == "# rng=PCG64"
    assert lines[1] == "scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms"
    assert lines[2].startswith("example,0,fpgrowth,5,")
    assert lines[3].startswith("example,0,mra,5,")


def test_summarize_empty():
    assert summarize([]) == {}


@pytest.mark.slow
def test_imbalanced_scenario_full_scale():
    preset = SCENARIOS["imbalanced"]
    synth = SynthConfig(
        n_transactions=25000, n_items=60, p_x=preset["p_x"], p_y=preset["p_y"], seed=0
    )
    cfg = MraConfig(xi=preset["min_support"], minconf=0.0)
    records = run_monte_carlo(synth, cfg, repetitions=20, jobs=os.cpu_count() or 1)

    summary = summarize(records)
    assert summary["mra_nodes"] < summary["baseline_nodes"]
    assert summary["mra_cond_trees"] < summary["baseline_cond_trees"]
    logger.info("mean wall ratio baseline/mra %.2f", summary["wall_ratio"])
