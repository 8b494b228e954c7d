#!/usr/bin/env python3
"""
GFP Miner - frequent-pattern and minority-class rule mining.

Command-line front door to FP-growth, targeted itemset counting with guided
FP-growth, the minority-report rule miner, the synthetic data generator and
the FP-growth versus minority-report benchmark.

Exit codes: 0 success, 1 I/O or data error, 2 usage error.
"""

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional, Sequence, TextIO

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.bench.generator import SynthConfig, generate
from src.bench.harness import (
    SCENARIOS,
    BenchmarkMismatchError,
    run_benchmark,
    run_monte_carlo,
    summarize,
    write_bench_csv,
)
from src.config.log import configure_logging
from src.config.settings import Settings
from src.data.transactions import (
    item_counts,
    load_itemsets,
    read_basket_file,
    support_descending_order,
    write_basket,
)
from src.mining.fpgrowth import fp_growth
from src.mining.fptree import build_fp_tree
from src.mining.gfpgrowth import count_itemsets
from src.mining.stats import MiningStats
from src.oracle.bruteforce import bf_frequent
from src.rules.export import (
    write_counts_csv,
    write_itemsets_csv,
    write_rules_csv,
    write_rules_jsonl,
    write_stats_comments,
)
from src.rules.minority_report import MraConfig, min_count_for_support, minority_report

logger = logging.getLogger("src.main")


def _support(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {text}")
    return value


def _confidence(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def _probability(text: str) -> float:
    value = _support(text)
    if value >= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _pick(value: Any, default: Any) -> Any:
    return default if value is None else value


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Yield a UTF-8, LF-terminated text stream for path, or stdout if None."""
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f


class MinerCli:
    """Runs one subcommand against loaded settings."""

    def __init__(self, settings: Settings):
        """Initialize the command runner.

        Args:
            settings: Loaded configuration supplying flag defaults
        """
        self.settings = settings

    def mine(self, args: argparse.Namespace) -> int:
        """Write every frequent itemset of the input."""
        db = read_basket_file(args.input)
        if args.min_count is not None:
            min_count = args.min_count
        else:
            min_count = min_count_for_support(args.min_support, len(db))
        engine = _pick(args.engine, self.settings.engine)

        if engine == "bruteforce":
            found = bf_frequent(db, min_count, max_items=self.settings.oracle_max_items)
        else:
            counts = item_counts(db)
            order = support_descending_order(
                db, (a for a, c in counts.items() if c >= min_count)
            )
            tis = fp_growth(build_fp_tree(db, order), min_count)
            found = [(e.itemset, e.count) for e in tis.enumerate() if e.target]

        itemsets = [(db.decode(sorted(itemset)), count) for itemset, count in found]
        logger.info(
            "%d itemsets with count >= %d (%s engine)", len(itemsets), min_count, engine
        )
        with open_output(args.output) as out:
            write_itemsets_csv(itemsets, len(db), out, self.settings.digits)
        return 0

    def count_targets(self, args: argparse.Namespace) -> int:
        """Count every itemset of a target list in the input."""
        db = read_basket_file(args.input)
        with open(args.targets, "rb") as f:
            targets = load_itemsets(f, db.symbols)

        resolved = [t.itemset for t in targets if t.itemset is not None]
        counts = iter(count_itemsets(db, resolved))
        rows = [(t.tokens, next(counts) if t.itemset is not None else 0) for t in targets]

        unknown = sum(1 for t in targets if t.itemset is None)
        if unknown:
            logger.info("%d target itemsets name unknown items, reported as 0", unknown)
        with open_output(args.output) as out:
            write_counts_csv(rows, out)
        return 0

    def mra(self, args: argparse.Namespace) -> int:
        """Mine minority-class association rules."""
        cfg = MraConfig(
            xi=_pick(args.min_support, self.settings.min_support),
            minconf=_pick(args.min_conf, self.settings.min_confidence),
            target_class=_pick(args.class_token, self.settings.class_token),
        )
        db = read_basket_file(args.input)
        stats = MiningStats()
        rules = minority_report(db, cfg, stats)
        logger.info("Mined %d rules in %.1f ms", len(rules), stats.wall_ms)

        fmt = _pick(args.format, self.settings.output_format)
        with open_output(args.output) as out:
            if fmt == "jsonl":
                write_rules_jsonl(rules, db.symbols, out)
                if args.stats:
                    out.write(json.dumps({"stats": stats.counters()}) + "\n")
            else:
                write_rules_csv(rules, db.symbols, out, self.settings.digits)
                if args.stats:
                    write_stats_comments(stats.counters(), out)
        return 0

    def gen(self, args: argparse.Namespace) -> int:
        """Write a synthetic basket file."""
        preset = SCENARIOS[_pick(args.scenario, self.settings.bench_scenario)]
        cfg = SynthConfig(
            n_transactions=_pick(args.transactions, self.settings.bench_transactions),
            n_items=_pick(args.items, self.settings.bench_items),
            p_x=_pick(args.p_x, preset["p_x"]),
            p_y=_pick(args.p_y, preset["p_y"]),
            seed=_pick(args.seed, self.settings.bench_seed),
        )
        db = generate(cfg)
        logger.info("Generated %d transactions over %d items", len(db), cfg.n_items)
        with open_output(args.output) as out:
            write_basket(db, out, header_lines=cfg.header_lines())
        return 0

    def bench(self, args: argparse.Namespace) -> int:
        """Compare full FP-growth with the minority-report miner."""
        scenario = _pick(args.scenario, self.settings.bench_scenario)
        preset = SCENARIOS[scenario]
        cfg = MraConfig(
            xi=_pick(args.min_support, preset["min_support"]),
            minconf=_pick(args.min_conf, self.settings.bench_min_confidence),
            target_class=_pick(args.class_token, self.settings.class_token),
        )

        if args.input:
            db = read_basket_file(args.input)
            records = [run_benchmark(db, cfg, scenario=Path(args.input).stem)]
        else:
            synth = SynthConfig(
                n_transactions=_pick(args.transactions, self.settings.bench_transactions),
                n_items=_pick(args.items, self.settings.bench_items),
                p_x=_pick(args.p_x, preset["p_x"]),
                p_y=_pick(args.p_y, preset["p_y"]),
                seed=_pick(args.seed, self.settings.bench_seed),
            )
            records = run_monte_carlo(
                synth,
                cfg,
                repetitions=_pick(args.repetitions, self.settings.bench_repetitions),
                jobs=_pick(args.jobs, self.settings.bench_jobs),
                scenario=scenario,
            )

        for key, value in summarize(records).items():
            logger.info("mean %s = %.3f", key, value)
        with open_output(args.output) as out:
            write_bench_csv(records, out)
        return 0


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with its five subcommands."""
    parser = argparse.ArgumentParser(
        prog="gfp-miner",
        description="Frequent-pattern and minority-class rule mining",
    )
    parser.add_argument(
        "--config",
        "-c",
        type=str,
        help="Path to configuration file",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        help="Logging level (DEBUG, INFO, WARNING, ERROR)",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    mine = commands.add_parser("mine", help="Mine frequent itemsets")
    mine.add_argument("input", help="Basket file")
    threshold = mine.add_mutually_exclusive_group(required=True)
    threshold.add_argument("--min-support", type=_support, help="Fraction in (0, 1]")
    threshold.add_argument("--min-count", type=_positive_int, help="Absolute count")
    mine.add_argument("--engine", choices=["fp", "bruteforce"])
    mine.add_argument("--output", "-o", help="Output CSV (stdout if omitted)")

    count = commands.add_parser("count-targets", help="Count a list of target itemsets")
    count.add_argument("input", help="Basket file")
    count.add_argument("targets", help="Target-list file, one itemset per line")
    count.add_argument("--output", "-o", help="Output CSV (stdout if omitted)")

    mra = commands.add_parser("mra", help="Mine minority-class association rules")
    mra.add_argument("input", help="Basket file")
    mra.add_argument("--class", dest="class_token", help="Token of the rare class item")
    mra.add_argument("--min-support", type=_probability, help="Fraction in (0, 1)")
    mra.add_argument("--min-conf", type=_confidence, help="Fraction in [0, 1]")
    mra.add_argument("--format", choices=["csv", "jsonl"])
    mra.add_argument("--stats", action="store_true", help="Append mining counters")
    mra.add_argument("--output", "-o", help="Output file (stdout if omitted)")

    gen = commands.add_parser("gen", help="Generate a synthetic basket file")
    _add_synth_arguments(gen)
    gen.add_argument("--output", "-o", help="Output basket file (stdout if omitted)")

    bench = commands.add_parser("bench", help="Benchmark FP-growth against MRA")
    _add_synth_arguments(bench)
    bench.add_argument("--input", help="Benchmark a basket file instead of synthetic data")
    bench.add_argument("--class", dest="class_token", help="Token of the rare class item")
    bench.add_argument("--min-support", type=_probability, help="Fraction in (0, 1)")
    bench.add_argument("--min-conf", type=_confidence, help="Fraction in [0, 1]")
    bench.add_argument("--repetitions", type=_positive_int)
    bench.add_argument("--jobs", type=_positive_int, help="Parallel repetitions")
    bench.add_argument("--output", "-o", help="Output CSV (stdout if omitted)")

    return parser


def _add_synth_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", choices=sorted(SCENARIOS))
    parser.add_argument("--transactions", type=_non_negative_int)
    parser.add_argument("--items", type=_positive_int)
    parser.add_argument("--p-x", type=_probability)
    parser.add_argument("--p-y", type=_probability)
    parser.add_argument("--seed", type=_non_negative_int)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = Settings(args.config)
        if args.log_level:
            settings.set("logging.level", args.log_level)
        configure_logging(settings.log_level)
    except (OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1

    cli = MinerCli(settings)
    handlers = {
        "mine": cli.mine,
        "count-targets": cli.count_targets,
        "mra": cli.mra,
        "gen": cli.gen,
        "bench": cli.bench,
    }
    try:
        return handlers[args.command](args)
    except BenchmarkMismatchError as e:
        logger.error("Benchmark engines disagree: %s", e)
        return 1
    except (OSError, ValueError, KeyError) as e:
        logger.error("%s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
