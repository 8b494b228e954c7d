"""Class association rule modules."""

from .export import (
    write_counts_csv,
    write_itemsets_csv,
    write_rules_csv,
    write_rules_jsonl,
    write_stats_comments,
)
from .minority_report import (
    MraConfig,
    Rule,
    min_count_for_support,
    minority_report,
    prune_to_rules,
    select_rare_frequent_items,
)

__all__ = [
    "MraConfig",
    "Rule",
    "min_count_for_support",
    "minority_report",
    "prune_to_rules",
    "select_rare_frequent_items",
    "write_counts_csv",
    "write_itemsets_csv",
    "write_rules_csv",
    "write_rules_jsonl",
    "write_stats_comments",
]
