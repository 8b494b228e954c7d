"""Brute-force counting and mining used to certify the tree-based miners.

Nothing here touches FP-trees or TIS trees: counts come from linear scans
with subset tests, candidates from a level-wise walk of the item lattice.
"""

import math
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from src.data.transactions import Itemset, TransactionDb
from src.rules.minority_report import MraConfig, Rule

DEFAULT_MAX_ITEMS = 20


class OracleLimitError(ValueError):
    """Raised when the item universe is too large to enumerate."""


def bf_count(db: TransactionDb, itemset: Iterable[int]) -> int:
    """Count the transactions of db containing every item of itemset."""
    wanted = set(itemset)
    return sum(1 for transaction in db if wanted.issubset(transaction))


def bf_frequent(
    db: TransactionDb,
    min_count: int,
    max_len: Optional[int] = None,
    max_items: int = DEFAULT_MAX_ITEMS,
) -> List[Tuple[Itemset, int]]:
    """Enumerate every itemset with count >= min_count.

    Args:
        db: Database to mine
        min_count: Absolute threshold, at least 1
        max_len: Longest itemset to consider; unbounded if None
        max_items: Refuse universes with more distinct items than this

    Returns:
        (itemset, count) pairs, itemsets as ascending id tuples, by length
        then lexicographically

    Raises:
        OracleLimitError: If db has more than max_items distinct items
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    universe = sorted({a for transaction in db for a in transaction})
    if len(universe) > max_items:
        raise OracleLimitError(
            f"{len(universe)} distinct items exceed the brute-force limit of {max_items}"
        )

    found: List[Tuple[Itemset, int]] = []
    level: List[Itemset] = [(a,) for a in universe]
    frequent_prev: Set[Itemset] = set()
    length = 1
    while level and (max_len is None or length <= max_len):
        frequent_here: Set[Itemset] = set()
        for candidate in level:
            if length > 1 and not all(
                sub in frequent_prev for sub in combinations(candidate, length - 1)
            ):
                continue
            count = bf_count(db, candidate)
            if count >= min_count:
                frequent_here.add(candidate)
                found.append((candidate, count))

        frequent_items = sorted({a for itemset in frequent_here for a in itemset})
        length += 1
        level = list(combinations(frequent_items, length))
        frequent_prev = frequent_here
    return found


def bf_rules(
    db: TransactionDb, cfg: MraConfig, max_items: int = DEFAULT_MAX_ITEMS
) -> List[Rule]:
    """Enumerate every rule ``alpha -> target_class`` meeting cfg.

    Raises:
        UnknownItemError: If the class token does not occur in db
        OracleLimitError: If the rare-class universe is too large
    """
    class_item = db.symbols.id_of(cfg.target_class)
    if not len(db):
        return []

    rare = db.with_transactions(
        tuple(a for a in t if a != class_item) for t in db if class_item in t
    )
    common = db.with_transactions(t for t in db if class_item not in t)
    if not len(rare):
        return []

    c_star = max(1, math.ceil(Fraction(str(cfg.xi)) * len(db)))
    minconf = Fraction(str(cfg.minconf))

    rules: List[Rule] = []
    for itemset, count1 in bf_frequent(rare, c_star, max_items=max_items):
        count0 = bf_count(common, itemset)
        confidence = Fraction(count1, count1 + count0)
        if confidence >= minconf:
            rules.append(
                Rule(
                    antecedent=itemset,
                    consequent=class_item,
                    support=Fraction(count1, len(db)),
                    confidence=confidence,
                    count1=count1,
                    count0=count0,
                )
            )
    return rules


def rule_keys(
    rules: Iterable[Rule],
) -> Set[Tuple[FrozenSet[int], int, Fraction, Fraction, int, int]]:
    """Order-independent view of a rule list for equality checks."""
    return {
        (r.key, r.consequent, r.support, r.confidence, r.count1, r.count0) for r in rules
    }
