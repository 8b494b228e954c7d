"""Brute-force oracle modules."""

from .bruteforce import OracleLimitError, bf_count, bf_frequent, bf_rules, rule_keys

__all__ = ["OracleLimitError", "bf_count", "bf_frequent", "bf_rules", "rule_keys"]
