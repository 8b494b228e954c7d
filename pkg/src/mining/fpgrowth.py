"""Classical FP-growth, emitting frequent itemsets into a TIS tree."""

import logging
from typing import Optional, Tuple

from .fptree import FpTree
from .stats import MiningStats
from .tistree import TisTree

logger = logging.getLogger(__name__)


def fp_growth(
    tree: FpTree, min_count: int, stats: Optional[MiningStats] = None
) -> TisTree:
    """Mine every itemset with count >= min_count from tree.

    Each frequent itemset is inserted as a target node carrying its count.
    The TIS order is the reverse of the tree order, so itemsets come out as
    paths in pattern-growth order.

    Args:
        tree: FP-tree to mine
        min_count: Absolute support threshold, at least 1
        stats: Optional counters to update

    Returns:
        TIS tree of the frequent itemsets

    Raises:
        ValueError: If min_count < 1
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")

    tis = TisTree(tree.order.reversed())
    _grow(tree, (), tis, min_count, stats)
    logger.debug("FP-growth found %d itemsets at min_count=%d", len(tis), min_count)
    return tis


def _grow(
    tree: FpTree,
    prefix: Tuple[int, ...],
    tis: TisTree,
    min_count: int,
    stats: Optional[MiningStats],
) -> None:
    # Header items in ascending-support order, i.e. reverse tree order.
    for item in reversed(tree.items()):
        if stats is not None:
            stats.header_probes += 1
        total = tree.item_total(item)
        if total < min_count:
            continue

        itemset = prefix + (item,)
        tis.insert_itemset(itemset, count=total, target=True)

        frequent = {a for a, c in tree.prefix_counts(item).items() if c >= min_count}
        if not frequent:
            continue
        conditional = tree.conditional_tree(item, allowed=frequent, stats=stats)
        _grow(conditional, itemset, tis, min_count, stats)
