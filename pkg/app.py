"""
app.py

Command-line front end.

    python app.py exponent --n 5 --set 0,1,2
    python app.py exponent-set --n 17 --mode exhaustive
    python app.py verify-table --min 5 --max 28 --mode exhaustive
    python app.py verify-theorems
    python app.py conjecture-scan --k 4 --n 65
    python app.py cache --cache artifacts/witness_cache.jsonl

Exit codes: 0 verified, 1 mismatch, 2 usage or parse error,
3 inconclusive (budget exhausted).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from core.config import (
    DEFAULT_BUDGET,
    DEFAULT_EXHAUSTIVE_CAP,
    DEFAULT_SEED,
    OUTPUT_FORMATS,
    RunConfig,
    default_cache_path,
    default_threads,
)
from core.errors import BudgetError, CacheError, DatasetError, DomainError
from core.exponent_engine import exponent
from core.residue_core import parse_set_literal
from core.theory import verify_gaps
from pipelines import reports
from pipelines.enumerator import enumerate_exact, search_exponent_set
from pipelines.table1 import load_table1
from pipelines.theory_checks import conjecture_scan, run_theorem_checks
from pipelines.verify_table import MODE_EXHAUSTIVE, MODE_SEARCH, exit_code, verify_table
from pipelines.witness_cache import WitnessCache

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# =========================
# Argument parsing
# =========================


def _add_run_options(parser: argparse.ArgumentParser, budget: int = DEFAULT_BUDGET) -> None:
    parser.add_argument("--budget", type=int, default=budget, help="random sets to sample per n")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=default_threads())
    parser.add_argument("--cap", type=int, default=DEFAULT_EXHAUSTIVE_CAP, help="largest n for exhaustive runs")
    parser.add_argument("--cache", default=None, help="witness cache (JSON Lines); defaults to $EXPONENT_LAB_CACHE")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exponent-lab",
        description="Exponents of subsets of Z_n and the exponent sets E_n.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="exponent of a single set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", dest="set_literal", required=True, help="comma-separated residues, e.g. 0,1,3")
    p.add_argument("--format", choices=OUTPUT_FORMATS, default="text")

    p = sub.add_parser("exponent-set", help="compute E_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=(MODE_EXHAUSTIVE, MODE_SEARCH), default=MODE_EXHAUSTIVE)
    _add_run_options(p)

    p = sub.add_parser("verify-table", help="reproduce the published table of E_n")
    p.add_argument("--min", dest="n_min", type=int, required=True)
    p.add_argument("--max", dest="n_max", type=int, required=True)
    p.add_argument("--mode", choices=(MODE_EXHAUSTIVE, MODE_SEARCH), default=MODE_EXHAUSTIVE)
    p.add_argument("--deep", action="store_true", help="exhaustive run for n=35 in search mode")
    _add_run_options(p)

    p = sub.add_parser("verify-theorems", help="sweep the constructions, lemmas and gap results")
    p.add_argument("--constructions-max", type=int, default=500)
    p.add_argument("--lemma6-max", type=int, default=100)
    p.add_argument("--lemma7-max", type=int, default=300)
    p.add_argument("--exact-max", type=int, default=DEFAULT_EXHAUSTIVE_CAP)
    _add_run_options(p, budget=10 ** 5)

    p = sub.add_parser("conjecture-scan", help="status of exponents near n/k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--min", dest="n_min", type=int, default=None)
    p.add_argument("--max", dest="n_max", type=int, default=None)
    _add_run_options(p)

    p = sub.add_parser("cache", help="re-verify and summarise a witness cache")
    p.add_argument("--cache", default=None)
    p.add_argument("--format", choices=OUTPUT_FORMATS, default="text")

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        budget=args.budget,
        seed=args.seed,
        threads=args.threads,
        cache_path=args.cache or default_cache_path(),
        output_format=args.format,
        exhaustive_cap=args.cap,
        deep=getattr(args, "deep", False),
    )


def _meta(config: RunConfig) -> dict:
    return {
        "seed": config.seed,
        "budget": config.budget,
        "threads": config.threads,
        "cap": config.exhaustive_cap,
    }


# =========================
# Commands
# =========================


def cmd_exponent(args: argparse.Namespace) -> int:
    s = parse_set_literal(args.n, args.set_literal)
    print(reports.render_exponent(exponent(args.n, s), args.format), end="")
    return EXIT_OK


def cmd_exponent_set(args: argparse.Namespace) -> int:
    config = _run_config(args)
    n = args.n
    cache = WitnessCache.load(config.cache_path)
    if args.mode == MODE_EXHAUSTIVE:
        result = enumerate_exact(n, config.exhaustive_cap, config.threads)
    else:
        result = search_exponent_set(
            n, config.budget, config.seed, config.threads, config.sweep_size,
            cached=cache.for_modulus(n),
        )
    added = cache.extend(result.witnesses.values())
    log.info("n=%d: %d new witnesses cached", n, added)
    gaps = verify_gaps(n, result) if n >= 5 else None
    print(reports.render_exponent_set(result, config.output_format, gaps), end="")
    return EXIT_OK


def cmd_verify_table(args: argparse.Namespace) -> int:
    config = _run_config(args)
    table = load_table1()
    cache = WitnessCache.load(config.cache_path)
    verdicts = verify_table(args.n_min, args.n_max, args.mode, table, config, cache)
    print(reports.render_table_verdicts(verdicts, config.output_format, _meta(config)), end="")
    return exit_code(verdicts)


def cmd_verify_theorems(args: argparse.Namespace) -> int:
    config = _run_config(args)
    checks = run_theorem_checks(
        constructions_max=args.constructions_max,
        lemma6_max=args.lemma6_max,
        lemma7_max=args.lemma7_max,
        exact_max=args.exact_max,
        cap=config.exhaustive_cap,
        budget=config.budget,
        seed=config.seed,
        threads=config.threads,
    )
    print(reports.render_checks(checks, config.output_format, _meta(config)), end="")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_conjecture_scan(args: argparse.Namespace) -> int:
    config = _run_config(args)
    if args.n is not None:
        n_lo = n_hi = args.n
    elif args.n_min is not None and args.n_max is not None:
        n_lo, n_hi = args.n_min, args.n_max
    else:
        raise DomainError("give --n or both --min and --max")
    if args.k < 1 or n_lo < 2 or n_hi < n_lo:
        raise DomainError(f"invalid scan k={args.k}, n in [{n_lo}, {n_hi}]")

    cache = WitnessCache.load(config.cache_path)
    cached = [r for n in range(n_lo, n_hi + 1) for r in cache.for_modulus(n)]
    report = conjecture_scan(
        args.k, n_lo, n_hi, config.budget, config.seed,
        config.exhaustive_cap, config.threads, cached,
    )
    for row in report.rows:
        cache.extend(row.witnesses.values())
    print(reports.render_scan(report, config.output_format), end="")
    return EXIT_OK


def cmd_cache(args: argparse.Namespace) -> int:
    path = args.cache or default_cache_path()
    cache = WitnessCache.load(path)
    summary = {
        "path": path,
        "records": len(cache),
        "rejected_lines": list(cache.rejected),
        "per_modulus": {str(n): len(cache.for_modulus(n)) for n in cache.moduli()},
    }
    if args.format == "json":
        print(reports.render_json(summary), end="")
    else:
        print(f"{path}: {summary['records']} witnesses, {len(cache.rejected)} rejected lines")
        for n in cache.moduli():
            exps = " ".join(str(r.exponent) for r in cache.for_modulus(n))
            print(f"  n={n}: {exps}")
    return EXIT_OK if not cache.rejected else EXIT_FAIL


COMMANDS = {
    "exponent": cmd_exponent,
    "exponent-set": cmd_exponent_set,
    "verify-table": cmd_verify_table,
    "verify-theorems": cmd_verify_theorems,
    "conjecture-scan": cmd_conjecture_scan,
    "cache": cmd_cache,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s", level=level)

    try:
        return COMMANDS[args.command](args)
    except (DomainError, BudgetError, DatasetError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
