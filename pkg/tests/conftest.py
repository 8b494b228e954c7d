"""Shared fixtures for the miner tests."""

from pathlib import Path
from typing import List

import numpy as np
import pytest

from src.data.transactions import (
    SymbolTable,
    TransactionDb,
    filter_items,
    read_basket_file,
    split_by_class,
    support_descending_order,
)

TESTS_DATA_DIR = Path(__file__).parent / "data"

# Pre-seeded so ids follow the published header order f, c, b, m.
EXAMPLE_SEED_TOKENS = ["f", "c", "b", "m"]


@pytest.fixture
def data_dir() -> Path:
    return TESTS_DATA_DIR


@pytest.fixture
def example_db() -> TransactionDb:
    return read_basket_file(
        TESTS_DATA_DIR / "example.basket", symbols=SymbolTable(EXAMPLE_SEED_TOKENS)
    )


def random_db(
    rng: np.random.Generator,
    max_items: int = 12,
    max_transactions: int = 64,
    class_tokens: bool = False,
) -> TransactionDb:
    """Draw a small random database, optionally with one class item per row.

    Class rows use the tokens "0"/"1" with a random rare-class rate.
    """
    n_items = int(rng.integers(1, max_items + 1))
    n_transactions = int(rng.integers(0, max_transactions + 1))
    density = rng.uniform(0.1, 0.6)
    p_rare = rng.uniform(0.05, 0.5)

    rows: List[List[str]] = []
    for _ in range(n_transactions):
        row = [f"i{j}" for j in range(n_items) if rng.random() < density]
        if class_tokens:
            row.append("1" if rng.random() < p_rare else "0")
        rows.append(row)

    symbols = SymbolTable([f"i{j}" for j in range(n_items)])
    if class_tokens:
        symbols.intern("0")
        symbols.intern("1")
    return TransactionDb.from_rows(rows, symbols=symbols)


class WorkedExample:
    """The example database split on class "1" and filtered to the rare-frequent items."""

    def __init__(self, db: TransactionDb):
        self.db = db
        self.class_item = db.symbols.id_of("1")
        self.keep = {db.symbols.id_of(tok) for tok in EXAMPLE_SEED_TOKENS}
        db1, db0 = split_by_class(db, self.class_item)
        self.db1 = filter_items(db1, self.keep)
        self.db0 = filter_items(db0, self.keep)
        self.order = support_descending_order(
            db.with_transactions(self.db1.transactions + self.db0.transactions), self.keep
        )

    def ids(self, *tokens: str) -> tuple:
        return tuple(self.db.symbols.id_of(tok) for tok in tokens)


@pytest.fixture
def worked(example_db: TransactionDb) -> WorkedExample:
    return WorkedExample(example_db)
