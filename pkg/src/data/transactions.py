"""Transaction database ingestion, encoding, filtering and partitioning."""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import (
    BinaryIO,
    Dict,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    TextIO,
    Tuple,
)

logger = logging.getLogger(__name__)

# Strictly increasing tuple of interned item ids.
Transaction = Tuple[int, ...]
Itemset = Tuple[int, ...]


class BasketParseError(ValueError):
    """Raised when a basket or target-list line cannot be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownItemError(KeyError):
    """Raised when a token is not present in the symbol table."""

    def __str__(self) -> str:
        return f"unknown item: {self.args[0]!r}"


@dataclass(frozen=True)
class BasketFormat:
    """Describes how a basket file is laid out.

    Attributes:
        separators: Regex matching item separators (spaces, tabs, commas)
        comment_prefix: Lines starting with this prefix are ignored
        encoding: Text encoding of the file
        item_joiner: Joins itemset tokens in CSV output; not allowed in tokens
    """

    separators: str = r"[\s,]+"
    comment_prefix: str = "#"
    encoding: str = "utf-8"
    item_joiner: str = ";"

    def split(self, line: str) -> List[str]:
        """Split a stripped line into its non-empty tokens."""
        return [tok for tok in re.split(self.separators, line) if tok]


DEFAULT_FORMAT = BasketFormat()


class SymbolTable:
    """Bijective mapping between external item tokens and dense integer ids."""

    def __init__(self, tokens: Iterable[str] = ()):
        """Initialize the table.

        Args:
            tokens: Tokens to intern up front, in id order
        """
        self._tokens: List[str] = []
        self._ids: Dict[str, int] = {}
        for token in tokens:
            self.intern(token)

    def intern(self, token: str) -> int:
        """Return the id of token, assigning the next free id if it is new."""
        item = self._ids.get(token)
        if item is None:
            item = len(self._tokens)
            self._ids[token] = item
            self._tokens.append(token)
        return item

    def lookup(self, token: str) -> Optional[int]:
        """Return the id of token, or None if it was never interned."""
        return self._ids.get(token)

    def id_of(self, token: str) -> int:
        """Return the id of token.

        Raises:
            UnknownItemError: If the token is not in the table
        """
        item = self._ids.get(token)
        if item is None:
            raise UnknownItemError(token)
        return item

    def token(self, item: int) -> str:
        return self._tokens[item]

    def decode(self, items: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self._tokens[a] for a in items)

    @property
    def tokens(self) -> Tuple[str, ...]:
        return tuple(self._tokens)

    def __contains__(self, token: object) -> bool:
        return token in self._ids

    def __len__(self) -> int:
        return len(self._tokens)


def make_transaction(items: Iterable[int]) -> Transaction:
    """Collapse duplicates and sort ids into a Transaction."""
    return tuple(sorted(set(items)))


@dataclass(frozen=True)
class TransactionDb:
    """An immutable database of encoded transactions.

    Attributes:
        transactions: Encoded transactions, in input order
        symbols: Token/id table shared by every transaction
    """

    transactions: Tuple[Transaction, ...]
    symbols: SymbolTable = field(repr=False)

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable[str]],
        symbols: Optional[SymbolTable] = None,
    ) -> "TransactionDb":
        """Build a database from rows of item tokens.

        Args:
            rows: One iterable of tokens per transaction
            symbols: Table to intern into; a fresh one if None
        """
        table = symbols if symbols is not None else SymbolTable()
        transactions = tuple(
            make_transaction(table.intern(tok) for tok in row) for row in rows
        )
        return cls(transactions=transactions, symbols=table)

    def with_transactions(self, transactions: Iterable[Transaction]) -> "TransactionDb":
        """Return a database over the same symbols holding other transactions."""
        return TransactionDb(transactions=tuple(transactions), symbols=self.symbols)

    def decode(self, itemset: Iterable[int]) -> Tuple[str, ...]:
        return self.symbols.decode(itemset)

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self.transactions)


class OrderDirection(Enum):
    """Which way an ItemOrder runs."""

    TREE = "tree"  # support-descending, FP-tree building order
    GROWTH = "growth"  # support-ascending, pattern-growth order


@dataclass(frozen=True)
class ItemOrder:
    """A ranking of item ids.

    ``items[0]`` has rank 0. An order in TREE direction is used to build
    FP-trees; its ``reversed()`` counterpart in GROWTH direction arranges
    TIS-trees.
    """

    items: Tuple[int, ...]
    direction: OrderDirection = OrderDirection.TREE
    rank: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        rank = {item: i for i, item in enumerate(self.items)}
        if len(rank) != len(self.items):
            raise ValueError("ItemOrder items must be distinct")
        object.__setattr__(self, "rank", rank)

    def reversed(self) -> "ItemOrder":
        """Return the same items in the opposite direction."""
        other = (
            OrderDirection.GROWTH
            if self.direction is OrderDirection.TREE
            else OrderDirection.TREE
        )
        return ItemOrder(items=self.items[::-1], direction=other)

    def is_reverse_of(self, other: "ItemOrder") -> bool:
        return self.direction is not other.direction and self.items == other.items[::-1]

    def sort(self, items: Iterable[int]) -> List[int]:
        """Sort ranked items by rank; callers filter unranked items first."""
        return sorted(items, key=self.rank.__getitem__)

    def __contains__(self, item: object) -> bool:
        return item in self.rank

    def __len__(self) -> int:
        return len(self.items)


def load_transactions(
    source: BinaryIO,
    fmt: BasketFormat = DEFAULT_FORMAT,
    symbols: Optional[SymbolTable] = None,
) -> TransactionDb:
    """Read a basket-format byte stream into a TransactionDb.

    Args:
        source: Binary stream, one transaction per line
        fmt: Basket layout
        symbols: Table to intern into (pre-seeding fixes the id order)

    Returns:
        The encoded database

    Raises:
        BasketParseError: If a line is not valid text in fmt.encoding
            or a token holds fmt.item_joiner
    """
    table = symbols if symbols is not None else SymbolTable()
    transactions: List[Transaction] = []

    for line_number, tokens in _iter_token_lines(source, fmt):
        transactions.append(make_transaction(table.intern(tok) for tok in tokens))

    logger.debug("Loaded %d transactions over %d items", len(transactions), len(table))
    return TransactionDb(transactions=tuple(transactions), symbols=table)


def read_basket_file(
    path: "str | Path",
    fmt: BasketFormat = DEFAULT_FORMAT,
    symbols: Optional[SymbolTable] = None,
) -> TransactionDb:
    """Load a basket file from disk."""
    with open(path, "rb") as f:
        return load_transactions(f, fmt, symbols)


@dataclass(frozen=True)
class TargetSpec:
    """One line of a target-list file.

    Attributes:
        tokens: Item tokens as written, duplicates removed
        itemset: Encoded itemset, or None if a token is unknown
    """

    tokens: Tuple[str, ...]
    itemset: Optional[Itemset]


def load_itemsets(
    source: BinaryIO,
    symbols: SymbolTable,
    fmt: BasketFormat = DEFAULT_FORMAT,
) -> List[TargetSpec]:
    """Read a target-list file against an existing symbol table.

    Unknown tokens are never interned; the itemset of such a line is None.
    """
    targets: List[TargetSpec] = []
    for _, tokens in _iter_token_lines(source, fmt):
        unique = tuple(dict.fromkeys(tokens))
        ids = [symbols.lookup(tok) for tok in unique]
        itemset = None if any(a is None for a in ids) else make_transaction(ids)
        targets.append(TargetSpec(tokens=unique, itemset=itemset))
    return targets


def write_basket(
    db: TransactionDb,
    stream: TextIO,
    header_lines: Sequence[str] = (),
    fmt: BasketFormat = DEFAULT_FORMAT,
) -> None:
    """Write db in basket format, one space-separated transaction per line."""
    for line in header_lines:
        stream.write(f"{fmt.comment_prefix} {line}\n")
    for transaction in db:
        stream.write(" ".join(db.decode(transaction)) + "\n")


def _iter_token_lines(
    source: BinaryIO, fmt: BasketFormat
) -> Iterator[Tuple[int, List[str]]]:
    for line_number, raw in enumerate(source, start=1):
        try:
            line = raw.decode(fmt.encoding).strip()
        except UnicodeDecodeError as e:
            raise BasketParseError(line_number, f"not valid {fmt.encoding}: {e.reason}")
        if not line or line.startswith(fmt.comment_prefix):
            continue
        tokens = fmt.split(line)
        for tok in tokens:
            if fmt.item_joiner in tok:
                raise BasketParseError(
                    line_number, f"token {tok!r} contains reserved {fmt.item_joiner!r}"
                )
        if tokens:
            yield line_number, tokens


def item_counts(db: TransactionDb) -> Dict[int, int]:
    """Count, for every item, the transactions that contain it."""
    counts: Counter = Counter()
    for transaction in db:
        counts.update(transaction)
    return dict(counts)


def split_by_class(
    db: TransactionDb, class_item: int
) -> Tuple[TransactionDb, TransactionDb]:
    """Partition db on a class item.

    Args:
        db: Database to split
        class_item: Id of the class item

    Returns:
        (db1, db0): transactions containing class_item (with it removed) and
        the remaining transactions unchanged

    Raises:
        UnknownItemError: If class_item is not a valid id
    """
    if not 0 <= class_item < len(db.symbols):
        raise UnknownItemError(class_item)

    with_class: List[Transaction] = []
    without_class: List[Transaction] = []
    for transaction in db:
        if class_item in transaction:
            with_class.append(tuple(a for a in transaction if a != class_item))
        else:
            without_class.append(transaction)

    return db.with_transactions(with_class), db.with_transactions(without_class)


def filter_items(db: TransactionDb, keep: Set[int]) -> TransactionDb:
    """Intersect every transaction with keep.

    Transactions left empty are kept so that len(db) is unchanged.
    """
    return db.with_transactions(
        tuple(a for a in transaction if a in keep) for transaction in db
    )


def support_descending_order(db: TransactionDb, eligible: Iterable[int]) -> ItemOrder:
    """Rank eligible items by descending count in db, ties by ascending id."""
    counts = item_counts(db)
    ranked = sorted(set(eligible), key=lambda a: (-counts.get(a, 0), a))
    return ItemOrder(items=tuple(ranked), direction=OrderDirection.TREE)
