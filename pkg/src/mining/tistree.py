"""Target-itemset (TIS) tree.

The TIS tree stores itemsets as paths in pattern-growth order (the reverse
of the FP-tree building order). Each node carries a target flag, the count
it was inserted with, the g-count filled in by guided FP-growth, and the set
of items found anywhere below it.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.data.transactions import Itemset, ItemOrder, OrderDirection

logger = logging.getLogger(__name__)


class UnrankedItemError(ValueError):
    """Raised when an itemset holds an item the TIS order does not rank."""


@dataclass(eq=False)
class TisNode:
    """A TIS-tree node. The root has ``item`` None."""

    item: Optional[int]
    target: bool = False
    count: int = 0
    g_count: int = 0
    children: Dict[int, "TisNode"] = field(default_factory=dict, repr=False)
    subtree_items: Set[int] = field(default_factory=set, repr=False)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class TisEntry:
    """One enumerated TIS node with its full itemset in pattern-growth order."""

    itemset: Itemset
    count: int
    g_count: int
    target: bool


class TisTree:
    """Tree of target itemsets arranged in pattern-growth order."""

    def __init__(self, order: ItemOrder):
        """Initialize an empty TIS tree.

        Args:
            order: Item order in GROWTH direction
        """
        if order.direction is not OrderDirection.GROWTH:
            raise ValueError("TIS-trees are arranged in GROWTH direction")
        self.order = order
        self.root = TisNode(item=None)

    def insert_itemset(
        self, itemset: Iterable[int], count: int = 0, target: bool = True
    ) -> TisNode:
        """Insert itemset as a path and return its terminal node.

        Intermediate nodes are created as non-targets with count 0. The
        terminal node takes count; its target flag is set but never cleared.

        Raises:
            UnrankedItemError: If an item is not ranked by the tree's order
        """
        items = list(dict.fromkeys(itemset))
        unranked = [a for a in items if a not in self.order]
        if unranked:
            raise UnrankedItemError(f"items {unranked} are not ranked in the TIS order")
        if not items:
            return self.root

        path = self.order.sort(items)
        node = self.root
        for depth, item in enumerate(path):
            node.subtree_items.update(path[depth:])
            child = node.children.get(item)
            if child is None:
                child = TisNode(item=item)
                node.children[item] = child
            node = child

        node.target = node.target or target
        node.count = count
        return node

    def find(self, itemset: Iterable[int]) -> Optional[TisNode]:
        """Return the node of itemset, or None if it was never inserted."""
        items = list(set(itemset))
        if any(a not in self.order for a in items):
            return None
        node = self.root
        for item in self.order.sort(items):
            node = node.children.get(item)
            if node is None:
                return None
        return node

    def ordered_children(self, node: TisNode) -> List[TisNode]:
        """Children of node in ascending pattern-growth rank."""
        return [node.children[a] for a in self.order.sort(node.children)]

    def enumerate(self) -> List[TisEntry]:
        """List every non-root node depth-first, children in rank order."""
        entries: List[TisEntry] = []
        stack: List[Tuple[TisNode, Itemset]] = [
            (child, (child.item,)) for child in reversed(self.ordered_children(self.root))
        ]
        while stack:
            node, itemset = stack.pop()
            entries.append(TisEntry(itemset, node.count, node.g_count, node.target))
            for child in reversed(self.ordered_children(node)):
                stack.append((child, itemset + (child.item,)))
        return entries

    def reset_g_counts(self) -> None:
        """Zero every g-count so the tree can guide another GFP pass."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            node.g_count = 0
            stack.extend(node.children.values())

    def __len__(self) -> int:
        """Number of non-root nodes."""
        total = 0
        stack = list(self.root.children.values())
        while stack:
            node = stack.pop()
            total += 1
            stack.extend(node.children.values())
        return total


def build_tis_from_target_list(
    itemsets: Iterable[Iterable[int]],
    order: ItemOrder,
    known_items: Set[int],
) -> Tuple[TisTree, List[Itemset]]:
    """Build a TIS tree of target itemsets.

    Itemsets holding any item outside known_items (or unranked by order) can
    not occur in the FP-tree and are returned in ``dropped`` instead.

    Args:
        itemsets: Target itemsets
        order: Item order in GROWTH direction
        known_items: Items present in the FP-tree header

    Returns:
        (tis, dropped)
    """
    tis = TisTree(order)
    dropped: List[Itemset] = []
    for itemset in itemsets:
        items = tuple(sorted(set(itemset)))
        if all(a in known_items and a in order for a in items):
            tis.insert_itemset(items, count=0, target=True)
        else:
            dropped.append(items)
    if dropped:
        logger.info("Dropped %d target itemsets with items absent from the data", len(dropped))
    return tis, dropped
