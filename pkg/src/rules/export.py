"""Writers for mined rules, frequent itemsets and target counts."""

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence, TextIO, Tuple

from src.data.transactions import DEFAULT_FORMAT, SymbolTable

from .minority_report import Rule

RULE_FIELDS = ["antecedent", "consequent", "support", "confidence", "count1", "count0"]
ITEM_JOINER = DEFAULT_FORMAT.item_joiner


def format_float(value: "float | Fraction", digits: int = 6) -> str:
    """Render value with the given number of significant digits."""
    return f"{float(value):.{digits}g}"


def join_items(tokens: Iterable[str]) -> str:
    return ITEM_JOINER.join(tokens)


def _csv_writer(stream: TextIO):
    return csv.writer(stream, lineterminator="\n")


@dataclass(frozen=True)
class RuleRecord:
    """A rule decoded to tokens, ready for output."""

    antecedent: Tuple[str, ...]
    consequent: str
    support: Fraction
    confidence: Fraction
    count1: int
    count0: int

    @classmethod
    def from_rule(cls, rule: Rule, symbols: SymbolTable) -> "RuleRecord":
        return cls(
            antecedent=symbols.decode(rule.antecedent),
            consequent=symbols.token(rule.consequent),
            support=rule.support,
            confidence=rule.confidence,
            count1=rule.count1,
            count0=rule.count0,
        )

    def to_dict(self) -> dict:
        return {
            "antecedent": list(self.antecedent),
            "consequent": self.consequent,
            "support": float(self.support),
            "confidence": float(self.confidence),
            "count1": self.count1,
            "count0": self.count0,
        }


def write_rules_csv(
    rules: Sequence[Rule], symbols: SymbolTable, stream: TextIO, digits: int = 6
) -> None:
    """Write rules as CSV, antecedent items joined by ';' in emitted order."""
    writer = _csv_writer(stream)
    writer.writerow(RULE_FIELDS)
    for rule in rules:
        record = RuleRecord.from_rule(rule, symbols)
        writer.writerow(
            [
                join_items(record.antecedent),
                record.consequent,
                format_float(record.support, digits),
                format_float(record.confidence, digits),
                record.count1,
                record.count0,
            ]
        )


def write_rules_jsonl(rules: Sequence[Rule], symbols: SymbolTable, stream: TextIO) -> None:
    """Write one JSON object per rule with the CSV fields."""
    for rule in rules:
        record = RuleRecord.from_rule(rule, symbols)
        stream.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")


def write_stats_comments(stats: Mapping[str, object], stream: TextIO) -> None:
    """Append stats as ``# key=value`` lines."""
    for key, value in stats.items():
        stream.write(f"# {key}={value}\n")


def write_itemsets_csv(
    itemsets: Sequence[Tuple[Tuple[str, ...], int]],
    db_size: int,
    stream: TextIO,
    digits: int = 6,
) -> None:
    """Write ``itemset,count,support`` rows, by descending count then itemset."""
    writer = _csv_writer(stream)
    writer.writerow(["itemset", "count", "support"])
    rows: List[Tuple[str, int]] = [(join_items(tokens), count) for tokens, count in itemsets]
    rows.sort(key=lambda row: (-row[1], row[0]))
    for itemset, count in rows:
        writer.writerow([itemset, count, format_float(Fraction(count, db_size), digits)])


def write_counts_csv(counts: Sequence[Tuple[Tuple[str, ...], int]], stream: TextIO) -> None:
    """Write ``itemset,count`` rows in the given order."""
    writer = _csv_writer(stream)
    writer.writerow(["itemset", "count"])
    for tokens, count in counts:
        writer.writerow([join_items(tokens), count])
