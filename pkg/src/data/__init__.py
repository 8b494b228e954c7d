"""Transaction data modules."""

from .transactions import (
    DEFAULT_FORMAT,
    BasketFormat,
    BasketParseError,
    ItemOrder,
    Itemset,
    OrderDirection,
    SymbolTable,
    TargetSpec,
    Transaction,
    TransactionDb,
    UnknownItemError,
    filter_items,
    item_counts,
    load_itemsets,
    load_transactions,
    make_transaction,
    read_basket_file,
    split_by_class,
    support_descending_order,
    write_basket,
)

__all__ = [
    "DEFAULT_FORMAT",
    "BasketFormat",
    "BasketParseError",
    "ItemOrder",
    "Itemset",
    "OrderDirection",
    "SymbolTable",
    "TargetSpec",
    "Transaction",
    "TransactionDb",
    "UnknownItemError",
    "filter_items",
    "item_counts",
    "load_itemsets",
    "load_transactions",
    "make_transaction",
    "read_basket_file",
    "split_by_class",
    "support_descending_order",
    "write_basket",
]
