"""
classify and lattice commands
"""

import argparse

import pandas as pd

from ringlab.cli.common import budgets_from_args, emit, flag_table, flags_of, resolve_ring, yes_no
from ringlab.models import LatticeReport, RingReport
from ringlab.services.lattice import lattice_report
from ringlab.services.profiles import profile_ring


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("classify", parents=[common], help="Element, cleanness and ring-class report")
    parser.add_argument("ring", nargs="?", help="Ring name, .ring file, statement or expression")
    parser.set_defaults(handler=cmd_classify)

    parser = subparsers.add_parser("lattice", parents=[common], help="One-sided ideals with summand and essential flags")
    parser.add_argument("ring", nargs="?", help="Ring name, .ring file, statement or expression")
    parser.add_argument("--side", choices=["right", "left"], default="right")
    parser.set_defaults(handler=cmd_lattice)


def render_ring_report(report: RingReport) -> str:
    header = (
        f"{report.name}  order {report.order}  "
        f"involution {yes_no(report.involution)}  fingerprint {report.fingerprint.short_hash()}"
    )
    elements = report.elements
    counts = f"idempotents {len(elements.idempotents)}  units {len(elements.units)}  regular {len(elements.regular)}"
    flags = [("abelian", elements.abelian)] + list(flags_of(report.cleanness)) + list(flags_of(report.ring_class))
    lines = [header, counts, flag_table(flags).to_string(index=False)]
    if report.ring_class.singular_ideal is not None:
        lines.append(f"Z(R_R) = {report.ring_class.singular_ideal}")
    lines.extend(f"note: {note}" for note in report.notes)
    return "\n".join(lines)


def cmd_classify(args: argparse.Namespace) -> int:
    name, ring = resolve_ring(args, args.ring)
    report = profile_ring(name, ring, budgets_from_args(args)).report()
    emit(args, report, render_ring_report(report))
    return 0


def render_lattice(report: LatticeReport) -> str:
    table = pd.DataFrame(
        [
            {
                "ideal": str(entry.elements),
                "summand": yes_no(entry.summand),
                "essential": yes_no(entry.essential),
                "idempotents": str(entry.idempotents) if entry.idempotents else "",
            }
            for entry in report.ideals
        ]
    )
    lines = [
        f"{report.name}  order {report.order}  {report.side} ideals {len(report.ideals)}",
        table.to_string(index=False),
        flag_table(flags_of(report)).to_string(index=False),
        f"singular ideal = {report.singular_ideal}",
    ]
    return "\n".join(lines)


def cmd_lattice(args: argparse.Namespace) -> int:
    _, ring = resolve_ring(args, args.ring)
    report = lattice_report(ring, budgets_from_args(args), args.side)
    emit(args, report, render_lattice(report))
    return 0
