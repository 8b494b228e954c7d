"""Synthetic imbalanced transaction data.

Each non-class item enters a transaction independently with probability
p_x; the rare class item "1" is drawn with probability p_y, otherwise the
transaction gets the common class item "0".
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from src.data.transactions import SymbolTable, TransactionDb

RNG_ALGORITHM = "PCG64"
CLASS_TOKENS = ("0", "1")


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of one synthetic database."""

    n_transactions: int
    n_items: int
    p_x: float
    p_y: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_transactions < 0:
            raise ValueError("n_transactions must be >= 0")
        if self.n_items < 1:
            raise ValueError("n_items must be >= 1")
        if not 0 < self.p_x < 1:
            raise ValueError(f"p_x must be in (0, 1), got {self.p_x}")
        if not 0 < self.p_y < 1:
            raise ValueError(f"p_y must be in (0, 1), got {self.p_y}")

    def header_lines(self) -> List[str]:
        """Metadata lines recorded at the top of generated files."""
        return [
            f"rng={RNG_ALGORITHM} seed={self.seed} "
            f"transactions={self.n_transactions} items={self.n_items} "
            f"p_x={self.p_x} p_y={self.p_y}",
        ]

    def with_seed(self, seed: int) -> "SynthConfig":
        return SynthConfig(self.n_transactions, self.n_items, self.p_x, self.p_y, seed)


def item_token(index: int) -> str:
    return f"i{index}"


def generate(cfg: SynthConfig) -> TransactionDb:
    """Draw a database; identical seeds give identical databases."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    included = rng.random((cfg.n_transactions, cfg.n_items)) < cfg.p_x
    rare = rng.random(cfg.n_transactions) < cfg.p_y

    symbols = SymbolTable([item_token(j) for j in range(cfg.n_items)])
    common_id, rare_id = (symbols.intern(tok) for tok in CLASS_TOKENS)

    transactions = tuple(
        tuple(int(a) for a in np.flatnonzero(row)) + (rare_id if is_rare else common_id,)
        for row, is_rare in zip(included, rare)
    )
    return TransactionDb(transactions=transactions, symbols=symbols)
