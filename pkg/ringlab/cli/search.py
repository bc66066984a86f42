"""
search command: enumerate small rings and keep those satisfying a predicate
"""

import argparse

import pandas as pd

from ringlab.cli.common import UsageError, budgets_from_args, emit, positive_int
from ringlab.config import settings
from ringlab.models import SearchReport
from ringlab.services.search import CONSTRUCTORS, GeneratorConfig, reverify, search_counterexamples
from ringlab.storage.findings_store import FindingsStore


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("search", parents=[common], help="Find small rings matching a predicate")
    parser.add_argument("--where", help="Predicate over report flags, e.g. 'CS & nonsingular & !quasi_continuous'")
    parser.add_argument("--max-order", type=positive_int, default=16)
    parser.add_argument("--depth", type=positive_int, default=1, help="Constructor applications on top of atoms")
    parser.add_argument(
        "--constructors",
        default=",".join(CONSTRUCTORS),
        help="Comma-separated subset of " + ", ".join(CONSTRUCTORS),
    )
    parser.add_argument("--involutions", action="store_true", help="Also try identity, transpose and swap involutions")
    parser.add_argument("--samples", type=positive_int, help="Classify a random sample of this size")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--limit", type=positive_int, help="Stop after this many candidates")
    parser.add_argument("--store", nargs="?", const=settings.findings_dir, help="Save findings to this directory")
    parser.add_argument("--reverify", action="store_true", help="Reclassify every finding in --store and exit")
    parser.set_defaults(handler=cmd_search)


def render(report: SearchReport) -> str:
    lines = [
        f"predicate {report.predicate}  examined {report.examined}  skipped {report.skipped}  "
        f"findings {len(report.findings)}" + ("  (partial)" if report.partial else "")
    ]
    if report.findings:
        table = pd.DataFrame(
            [
                {
                    "ring": f.spec,
                    "order": f.fingerprint.order,
                    "fingerprint": f.fingerprint.short_hash(),
                    "saved": f.path or "",
                }
                for f in report.findings
            ]
        )
        lines.append(table.to_string(index=False))
    return "\n".join(lines)


def cmd_search(args: argparse.Namespace) -> int:
    budgets = budgets_from_args(args)
    if args.reverify:
        failures = reverify(FindingsStore(args.store), budgets)
        for path in failures:
            print(f"no longer satisfies its predicate: {path}")
        return 2 if failures else 0
    if not args.where:
        raise UsageError("give a predicate with --where")
    constructors = tuple(c.strip() for c in args.constructors.split(",") if c.strip())
    unknown = sorted(set(constructors) - set(CONSTRUCTORS))
    if unknown:
        raise UsageError(f"unknown constructors: {', '.join(unknown)}")
    config = GeneratorConfig(
        max_order=args.max_order,
        constructors=constructors,
        depth=args.depth,
        involutions=args.involutions,
        samples=args.samples,
        seed=args.seed,
        limit=args.limit,
    )
    store = FindingsStore(args.store) if args.store else None
    report = search_counterexamples(args.where, config, budgets, store)
    emit(args, report, render(report))
    return 0
