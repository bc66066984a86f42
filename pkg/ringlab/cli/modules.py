"""
module command: flags of a finite module, or the CS level of a ring
"""

import argparse

import pandas as pd

from ringlab.cli.common import (
    budgets_from_args,
    emit,
    flag_table,
    flags_of,
    positive_int,
    resolve_module,
    resolve_ring,
    yes_no,
)
from ringlab.models import CsLevelReport, ModuleReport
from ringlab.services.endomorphisms import cs_level
from ringlab.services.profiles import profile_module


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("module", parents=[common], help="Module flags and End(M) decompositions")
    parser.add_argument(
        "target",
        nargs="?",
        help="Module name or 'module <name> over <ring> = ...' statement; a ring with --cs-level",
    )
    parser.add_argument("--cs-level", type=positive_int, metavar="KMAX", help="Largest k <= KMAX with R^k CS")
    parser.set_defaults(handler=cmd_module)


def render_module(report: ModuleReport) -> str:
    lines = [
        f"{report.name} over {report.ring}  order {report.order}  "
        f"submodules {report.submodule_count}  |End(M)| {report.endomorphism_ring_order}",
        flag_table(flags_of(report)).to_string(index=False),
    ]
    if report.singular_submodule is not None:
        lines.append(f"Z(M) = {report.singular_submodule}")
    lines.extend(f"note: {note}" for note in report.notes)
    return "\n".join(lines)


def render_cs_level(report: CsLevelReport) -> str:
    table = pd.DataFrame([{"k": k, "CS": yes_no(holds)} for k, holds in sorted(report.flags.items())])
    return "\n".join([f"{report.ring}  CS level {report.level} (kmax {report.kmax})", table.to_string(index=False)])


def cmd_module(args: argparse.Namespace) -> int:
    budgets = budgets_from_args(args)
    if args.cs_level is not None:
        _, ring = resolve_ring(args, args.target)
        level = cs_level(ring, args.cs_level, budgets)
        emit(args, level, render_cs_level(level))
        return 0
    name, module = resolve_module(args, args.target)
    report = profile_module(name, module, budgets).report
    emit(args, report, render_module(report))
    return 0
