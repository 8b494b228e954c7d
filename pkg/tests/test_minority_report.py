"""Minority-report rule mining: worked example, edge cases and oracle agreement."""

import logging
from fractions import Fraction

import numpy as np
import pytest

from src.data.transactions import (
    ItemOrder,
    OrderDirection,
    SymbolTable,
    TransactionDb,
    UnknownItemError,
    filter_items,
    split_by_class,
    support_descending_order,
)
from src.mining.fpgrowth import fp_growth
from src.mining.fptree import build_fp_tree
from src.mining.gfpgrowth import gfp_growth
from src.mining.stats import MiningStats
from src.mining.tistree import TisTree
from src.oracle.bruteforce import bf_count, bf_frequent, bf_rules, rule_keys
from src.rules.minority_report import (
    MraConfig,
    min_count_for_support,
    minority_report,
    prune_to_rules,
    select_rare_frequent_items,
)

from tests.conftest import random_db


def _by_antecedent(rules, db):
    return {db.decode(r.antecedent): r for r in rules}


def test_worked_example_rules(example_db):
    rules = minority_report(example_db, MraConfig(xi=0.125, minconf=0.2))
    found = _by_antecedent(rules, example_db)

    assert list(found) == [("m",), ("m", "f"), ("b",), ("c",), ("f",)]
    confidences = {k: r.confidence for k, r in found.items()}
    assert confidences == {
        ("m",): Fraction(1, 4),
        ("m", "f"): Fraction(1, 4),
        ("b",): Fraction(1, 4),
        ("c",): Fraction(1, 5),
        ("f",): Fraction(1, 5),
    }
    assert all(r.support == Fraction(1, 8) for r in rules)
    assert all(r.count1 == 1 for r in rules)
    assert all(r.consequent == example_db.symbols.id_of("1") for r in rules)


def test_worked_example_matches_oracle(example_db):
    cfg = MraConfig(xi=0.125, minconf=0.2)
    assert rule_keys(minority_report(example_db, cfg)) == rule_keys(bf_rules(example_db, cfg))


def test_worked_example_stats(example_db):
    stats = MiningStats()
    minority_report(example_db, MraConfig(xi=0.125, minconf=0.2), stats)
    # FP_1 (4) + FP_0 (8) + one conditional node on each side
    assert stats.nodes_allocated == 14
    assert stats.conditional_trees_built == 2
    assert stats.wall_time > 0


def test_item_selection(worked):
    db1, _ = split_by_class(worked.db, worked.class_item)
    selected = select_rare_frequent_items(db1, 1)
    assert {worked.db.symbols.token(a) for a in selected} == {"f", "c", "b", "m"}
    assert select_rare_frequent_items(db1, 2) == set()


def test_higher_confidence_threshold(example_db):
    rules = minority_report(example_db, MraConfig(xi=0.125, minconf=0.24))
    assert list(_by_antecedent(rules, example_db)) == [("m",), ("m", "f"), ("b",)]


def test_no_perfect_rule(example_db):
    assert minority_report(example_db, MraConfig(xi=0.125, minconf=1.0)) == []


def test_support_above_class_frequency_warns(example_db, caplog):
    with caplog.at_level(logging.WARNING):
        rules = minority_report(example_db, MraConfig(xi=0.9, minconf=0.0))
    assert rules == []
    assert "class frequency" in caplog.text


def test_unknown_class_token(example_db):
    with pytest.raises(UnknownItemError):
        minority_report(example_db, MraConfig(xi=0.125, minconf=0.2, target_class="9"))


def test_empty_database(caplog):
    db = TransactionDb.from_rows([], symbols=SymbolTable(["0", "1"]))
    with caplog.at_level(logging.WARNING):
        assert minority_report(db, MraConfig(xi=0.5, minconf=0.5)) == []
    assert "Empty database" in caplog.text


def test_no_rare_class_transactions():
    db = TransactionDb.from_rows([["a", "0"], ["b", "0"]], symbols=SymbolTable(["1"]))
    assert minority_report(db, MraConfig(xi=0.5, minconf=0.0)) == []


def test_perfect_separation():
    db = TransactionDb.from_rows([["x", "1"]] * 2 + [["y", "0"]] * 6)
    rules = minority_report(db, MraConfig(xi=0.1, minconf=1.0))
    assert [(db.decode(r.antecedent), r.confidence, r.count0) for r in rules] == [
        (("x",), Fraction(1), 0)
    ]


def test_other_class_token():
    db = TransactionDb.from_rows(
        [["a", "yes"], ["a", "no"], ["a", "no"], ["b", "no"]]
    )
    rules = minority_report(db, MraConfig(xi=0.25, minconf=0.0, target_class="yes"))
    assert [(db.decode(r.antecedent), r.confidence) for r in rules] == [
        (("a",), Fraction(1, 3))
    ]


def test_prune_skips_zero_count_targets(caplog):
    tis = TisTree(ItemOrder((0, 1), direction=OrderDirection.GROWTH))
    tis.insert_itemset((0,), count=0)
    tis.insert_itemset((1,), count=2).g_count = 2
    with caplog.at_level(logging.WARNING):
        rules = prune_to_rules(tis, db_size=10, target_class=5, minconf=0.5)
    assert [(r.antecedent, r.confidence, r.support) for r in rules] == [
        ((1,), Fraction(1, 2), Fraction(1, 5))
    ]
    assert "count 0" in caplog.text


@pytest.mark.parametrize(
    "xi, n, expected",
    [(0.125, 8, 1), (5e-5, 25000, 2), (0.3, 10, 3), (0.01, 1, 1), (1.0, 7, 7), (0.001, 0, 1)],
)
def test_min_count_for_support(xi, n, expected):
    assert min_count_for_support(xi, n) == expected


@pytest.mark.parametrize(
    "xi, minconf", [(0, 0.5), (1, 0.5), (1.5, 0.5), (0.1, -0.1), (0.1, 1.01)]
)
def test_config_validation(xi, minconf):
    with pytest.raises(ValueError):
        MraConfig(xi=xi, minconf=minconf)


@pytest.mark.parametrize("seed", range(120))
def test_matches_bruteforce(seed):
    rng = np.random.default_rng(9000 + seed)
    db = random_db(rng, class_tokens=True)
    cfg = MraConfig(
        xi=float(rng.choice([0.02, 0.05, 0.1, 0.125, 0.2, 0.3])),
        minconf=float(rng.choice([0.0, 0.1, 0.25, 0.5, 0.75, 1.0])),
    )
    assert rule_keys(minority_report(db, cfg)) == rule_keys(bf_rules(db, cfg))


@pytest.mark.parametrize("seed", range(100))
def test_rare_side_itemsets_and_common_side_counts(seed):
    rng = np.random.default_rng(11000 + seed)
    db = random_db(rng, class_tokens=True)
    c_star = min_count_for_support(float(rng.choice([0.02, 0.05, 0.1, 0.2])), len(db))

    db1, db0 = split_by_class(db, db.symbols.id_of("1"))
    keep = select_rare_frequent_items(db1, c_star)
    rare, common = filter_items(db1, keep), filter_items(db0, keep)
    order = support_descending_order(
        db.with_transactions(rare.transactions + common.transactions), keep
    )
    tis = fp_growth(build_fp_tree(rare, order), c_star)
    gfp_growth(tis, build_fp_tree(common, order))

    targets = [e for e in tis.enumerate() if e.target]
    assert {frozenset(e.itemset): e.count for e in targets} == {
        frozenset(s): c for s, c in bf_frequent(db1, c_star)
    }
    for entry in targets:
        assert entry.g_count == bf_count(db0, entry.itemset)
