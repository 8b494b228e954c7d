"""Guided FP-growth: count a large list of target itemsets in one partial walk.

The walk follows the TIS tree top-down while exploring the FP-tree
bottom-up. Three O(1) checks keep it focused: the FP-tree header (is the
item present at all), the target flag (does this node need a count) and
the leaf test (is a conditional tree needed). Conditional trees are cut
down to the items of the TIS subtree being explored.
"""

import logging
from typing import List, Optional, Sequence

from src.data.transactions import (
    Itemset,
    TransactionDb,
    item_counts,
    support_descending_order,
)

from .fptree import FpTree, build_fp_tree
from .stats import MiningStats
from .tistree import TisNode, TisTree, build_tis_from_target_list

logger = logging.getLogger(__name__)


class OrderMismatchError(ValueError):
    """Raised when a TIS tree is not arranged in reverse FP-tree order."""


def gfp_growth(
    tis: TisTree,
    tree: FpTree,
    stats: Optional[MiningStats] = None,
    node: Optional[TisNode] = None,
) -> None:
    """Set g_count of every target node below node to its count in tree.

    Non-target nodes keep their g_count. Every g_count below node must be 0
    on entry (see TisTree.reset_g_counts).

    Args:
        tis: TIS tree whose order is the reverse of tree.order
        tree: FP-tree representing the database to count in
        stats: Optional counters to update
        node: Subtree root to start from; the TIS root if None

    Raises:
        OrderMismatchError: If the two trees are not coordinated
    """
    if not tis.order.is_reverse_of(tree.order):
        raise OrderMismatchError(
            "TIS order must be the reverse of the FP-tree order"
        )
    _guided_growth(tis, node if node is not None else tis.root, tree, stats or MiningStats())


def _guided_growth(
    tis: TisTree, node: TisNode, tree: FpTree, stats: MiningStats
) -> None:
    for child in tis.ordered_children(node):
        stats.header_probes += 1
        if not tree.contains_item(child.item):
            continue

        if child.target:
            child.g_count = tree.item_total(child.item)
        else:
            stats.nontarget_skips += 1

        if child.is_leaf:
            stats.leaf_cutoffs += 1
            continue

        conditional = tree.conditional_tree(
            child.item, allowed=child.subtree_items, stats=stats
        )
        if not conditional.is_empty:
            _guided_growth(tis, child, conditional, stats)


def count_itemsets(
    db: TransactionDb,
    itemsets: Sequence[Itemset],
    stats: Optional[MiningStats] = None,
) -> List[int]:
    """Count each itemset in db with a single guided FP-growth pass.

    Args:
        db: Database to count in
        itemsets: Target itemsets (encoded against db.symbols)
        stats: Optional counters to update

    Returns:
        Counts in the order of itemsets; 0 for itemsets with unseen items
    """
    order = support_descending_order(db, item_counts(db))
    tree = build_fp_tree(db, order, stats)
    tis, dropped = build_tis_from_target_list(
        itemsets, order.reversed(), set(tree.header)
    )
    gfp_growth(tis, tree, stats)

    counts = []
    for itemset in itemsets:
        if not itemset:
            counts.append(len(db))
            continue
        found = tis.find(itemset)
        counts.append(found.g_count if found is not None and found.target else 0)
    logger.info(
        "Counted %d target itemsets (%d dropped as unseen)", len(itemsets), len(dropped)
    )
    return counts
