"""Minority-class rule mining over imbalanced transaction data.

The rare-class side is small, so it is mined exhaustively with FP-growth.
Its frequent itemsets then guide a single partial walk over the much larger
common-class FP-tree, which collects exactly the counts the confidence
test needs.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Set

from src.data.transactions import (
    Itemset,
    TransactionDb,
    filter_items,
    item_counts,
    split_by_class,
    support_descending_order,
)
from src.mining.fpgrowth import fp_growth
from src.mining.fptree import build_fp_tree
from src.mining.gfpgrowth import gfp_growth
from src.mining.stats import MiningStats
from src.mining.tistree import TisTree

logger = logging.getLogger(__name__)


def as_fraction(value: "float | Fraction | str") -> Fraction:
    """Exact rational value of a threshold as the user wrote it (0.2 -> 1/5)."""
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


def min_count_for_support(xi: "float | Fraction | str", db_size: int) -> int:
    """Return C* = ceil(xi * db_size), never below 1."""
    return max(1, math.ceil(as_fraction(xi) * db_size))


@dataclass(frozen=True)
class Rule:
    """A class association rule ``antecedent -> consequent``.

    Attributes:
        antecedent: Items in pattern-growth order
        consequent: Class item id
        support: count1 / |DB|
        confidence: count1 / (count1 + count0)
        count1: Transactions holding antecedent and the class item
        count0: Transactions holding antecedent but not the class item
    """

    antecedent: Itemset
    consequent: int
    support: Fraction
    confidence: Fraction
    count1: int
    count0: int

    @classmethod
    def from_counts(
        cls, antecedent: Itemset, consequent: int, count1: int, count0: int, db_size: int
    ) -> "Rule":
        return cls(
            antecedent=antecedent,
            consequent=consequent,
            support=Fraction(count1, db_size),
            confidence=Fraction(count1, count1 + count0),
            count1=count1,
            count0=count0,
        )

    @property
    def key(self) -> FrozenSet[int]:
        return frozenset(self.antecedent)


@dataclass(frozen=True)
class MraConfig:
    """Thresholds and target class for a minority-report run.

    Attributes:
        xi: Minimum support fraction, 0 < xi < 1
        minconf: Minimum confidence, 0 <= minconf <= 1
        target_class: Token of the rare class item
    """

    xi: float
    minconf: float
    target_class: str = "1"

    def __post_init__(self) -> None:
        if not 0 < as_fraction(self.xi) < 1:
            raise ValueError(f"xi must be in (0, 1), got {self.xi}")
        if not 0 <= as_fraction(self.minconf) <= 1:
            raise ValueError(f"minconf must be in [0, 1], got {self.minconf}")


def minority_report(
    db: TransactionDb, cfg: MraConfig, stats: Optional[MiningStats] = None
) -> List[Rule]:
    """Mine every rule ``alpha -> target_class`` meeting cfg's thresholds.

    Args:
        db: Database in which each transaction holds at most one class item
        cfg: Thresholds and class token
        stats: Optional counters to update

    Returns:
        Rules in TIS enumeration order

    Raises:
        UnknownItemError: If the class token does not occur in db
    """
    stats = stats if stats is not None else MiningStats()
    class_item = db.symbols.id_of(cfg.target_class)

    with stats.timer():
        if not len(db):
            logger.warning("Empty database, no rules")
            return []

        c_star = min_count_for_support(cfg.xi, len(db))
        db1, db0 = split_by_class(db, class_item)
        if not len(db1):
            logger.warning("No transaction holds class %r, no rules", cfg.target_class)
            return []
        if as_fraction(cfg.xi) >= Fraction(len(db1), len(db)):
            logger.warning(
                "min support %s is not below the class frequency %d/%d; "
                "few or no rules will be produced",
                cfg.xi,
                len(db1),
                len(db),
            )

        keep = select_rare_frequent_items(db1, c_star)
        logger.info(
            "C*=%d, %d of %d items frequent in class %r",
            c_star,
            len(keep),
            len(db.symbols),
            cfg.target_class,
        )
        db1 = filter_items(db1, keep)
        db0 = filter_items(db0, keep)

        # One support-descending order over the whole filtered db drives both trees.
        order = support_descending_order(
            db.with_transactions(db1.transactions + db0.transactions), keep
        )

        fp1 = build_fp_tree(db1, order, stats)
        fp0 = build_fp_tree(db0, order, stats)
        logger.info("FP_1: %d nodes, FP_0: %d nodes", fp1.node_count, fp0.node_count)

        tis = fp_growth(fp1, c_star, stats)
        gfp_growth(tis, fp0, stats)
        rules = prune_to_rules(tis, len(db), class_item, cfg.minconf)

    logger.info("%d rules from %d candidate itemsets", len(rules), len(tis))
    return rules


def select_rare_frequent_items(db1: TransactionDb, min_count: int) -> Set[int]:
    """Items whose count in the rare-class db reaches min_count."""
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    return {a for a, c in item_counts(db1).items() if c >= min_count}


def prune_to_rules(
    tis: TisTree,
    db_size: int,
    target_class: int,
    minconf: "float | Fraction | str",
) -> List[Rule]:
    """Turn GFP-counted TIS target nodes into rules passing minconf.

    A node's count is its rare-class count and its g_count its common-class
    count. The confidence test is done in exact rational arithmetic.
    """
    if db_size < 1:
        raise ValueError(f"db_size must be >= 1, got {db_size}")
    threshold = as_fraction(minconf)

    rules: List[Rule] = []
    for entry in tis.enumerate():
        if not entry.target:
            continue
        if entry.count == 0:
            logger.warning("Target itemset %s has count 0, skipped", entry.itemset)
            continue
        confidence = Fraction(entry.count, entry.count + entry.g_count)
        if confidence >= threshold:
            rules.append(
                Rule.from_counts(
                    entry.itemset, target_class, entry.count, entry.g_count, db_size
                )
            )
    return rules
