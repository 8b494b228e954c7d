"""FP-tree construction, header-table queries and conditional trees."""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.data.transactions import ItemOrder, OrderDirection, TransactionDb

from .stats import MiningStats

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class FpNode:
    """A node of an FP-tree. The root has ``item`` None."""

    item: Optional[int]
    count: int = 0
    parent: Optional["FpNode"] = field(default=None, repr=False)
    children: Dict[int, "FpNode"] = field(default_factory=dict, repr=False)
    next_same_item: Optional["FpNode"] = field(default=None, repr=False)


@dataclass(eq=False)
class HeaderEntry:
    """Header-table slot: item total and the head of its node chain."""

    total: int
    head: FpNode


class FpTree:
    """Compressed prefix tree over a transaction database.

    Every root-to-leaf path lists items in strictly increasing rank of
    ``order``. The header table links all nodes of an item and keeps the
    item's total so that membership and totals are O(1).
    """

    def __init__(self, order: ItemOrder, db_size: int = 0):
        """Initialize an empty tree.

        Args:
            order: Item order in TREE direction
            db_size: Number of transactions the tree represents
        """
        if order.direction is not OrderDirection.TREE:
            raise ValueError("FP-trees are built in TREE direction")
        self.order = order
        self.db_size = db_size
        self.root = FpNode(item=None)
        self.header: Dict[int, HeaderEntry] = {}
        self.node_count = 0

    def insert(
        self, items: Iterable[int], count: int = 1, stats: Optional[MiningStats] = None
    ) -> None:
        """Insert a rank-sorted path with weight count."""
        node = self.root
        for item in items:
            child = node.children.get(item)
            if child is None:
                child = FpNode(item=item, parent=node)
                node.children[item] = child
                entry = self.header.get(item)
                if entry is None:
                    self.header[item] = HeaderEntry(total=0, head=child)
                else:
                    child.next_same_item = entry.head
                    entry.head = child
                self.node_count += 1
                if stats is not None:
                    stats.nodes_allocated += 1
            child.count += count
            self.header[item].total += count
            node = child

    def contains_item(self, item: int) -> bool:
        entry = self.header.get(item)
        return entry is not None and entry.total > 0

    def item_total(self, item: int) -> int:
        """Return the count of item in the represented database.

        Raises:
            KeyError: If the item has no header entry
        """
        entry = self.header.get(item)
        if entry is None:
            raise KeyError(f"item {item} is not in the FP-tree")
        return entry.total

    def chain(self, item: int) -> Iterable[FpNode]:
        """Iterate over every node of item via the header chain."""
        node = self.header[item].head if item in self.header else None
        while node is not None:
            yield node
            node = node.next_same_item

    def prefix_paths(
        self, item: int, allowed: Optional[Set[int]] = None
    ) -> List[Tuple[List[int], int]]:
        """Return the conditional pattern base of item.

        Each entry is the rank-sorted path above one node of item, with the
        node's count. Items outside allowed are skipped when it is given.
        """
        paths = []
        for node in self.chain(item):
            path = []
            parent = node.parent
            while parent is not None and parent.item is not None:
                if allowed is None or parent.item in allowed:
                    path.append(parent.item)
                parent = parent.parent
            if path:
                path.reverse()
                paths.append((path, node.count))
        return paths

    def prefix_counts(self, item: int) -> Dict[int, int]:
        """Count every item in the conditional pattern base of item."""
        counts: Dict[int, int] = defaultdict(int)
        for node in self.chain(item):
            parent = node.parent
            while parent is not None and parent.item is not None:
                counts[parent.item] += node.count
                parent = parent.parent
        return dict(counts)

    def conditional_tree(
        self,
        item: int,
        allowed: Optional[Set[int]] = None,
        stats: Optional[MiningStats] = None,
    ) -> "FpTree":
        """Build the conditional FP-tree of item.

        The result keeps this tree's order and represents the transactions
        containing item, restricted to items that precede it and, when
        allowed is given, to items in allowed.

        Raises:
            KeyError: If item is not in the tree
        """
        total = self.item_total(item)
        tree = FpTree(self.order, db_size=total)
        for path, count in self.prefix_paths(item, allowed):
            tree.insert(path, count, stats)
        if stats is not None:
            stats.conditional_trees_built += 1
        return tree

    def items(self) -> List[int]:
        """Header items in tree order."""
        return self.order.sort(a for a in self.header if self.header[a].total > 0)

    @property
    def is_empty(self) -> bool:
        return not self.root.children

    def dump(self, db: Optional[TransactionDb] = None) -> str:
        """Render the tree as indented ``item:count`` lines in child-rank order.

        Args:
            db: If given, items are rendered as their tokens
        """
        lines: List[str] = []

        def label(item: int) -> str:
            return db.symbols.token(item) if db is not None else str(item)

        def walk(node: FpNode, depth: int) -> None:
            for item in self.order.sort(node.children):
                child = node.children[item]
                lines.append(f"{'  ' * depth}{label(item)}:{child.count}")
                walk(child, depth + 1)

        walk(self.root, 0)
        return "\n".join(lines)


def build_fp_tree(
    db: TransactionDb, order: ItemOrder, stats: Optional[MiningStats] = None
) -> FpTree:
    """Build an FP-tree from db, dropping items that order does not rank."""
    tree = FpTree(order, db_size=len(db))
    for transaction in db:
        items = order.sort(a for a in transaction if a in order)
        if items:
            tree.insert(items, 1, stats)
    logger.debug(
        "Built FP-tree: %d transactions, %d nodes, %d header items",
        len(db),
        tree.node_count,
        len(tree.header),
    )
    return tree
