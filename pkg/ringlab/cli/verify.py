"""
verify command: run registered claims over a catalog
"""

import argparse
import json
from pathlib import Path

import pandas as pd

from ringlab.cli.common import UsageError, budgets_from_args, environment, emit
from ringlab.config import settings
from ringlab.errors import CatalogError
from ringlab.models import ClaimInfo, Verdict, VerifyReport
from ringlab.services.catalog import BUILTIN
from ringlab.services.claims import CLAIMS, exit_code, references_of, run_claims


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="Check claims on every catalog instance")
    parser.add_argument("--claim", action="append", default=[], help="Claim id, reference id (e.g. T-3.1) or family; repeatable")
    parser.add_argument("--all", action="store_true", help="Every registered claim")
    parser.add_argument("--list", action="store_true", help="List the registered claims and exit")
    parser.add_argument("--report", help="Also write the JSON report to this file")
    parser.set_defaults(handler=cmd_verify)


def render(report: VerifyReport) -> str:
    rows = []
    for claim in report.claims:
        rows.append(
            {
                "claim": claim.claim,
                "family": claim.family,
                "refs": ",".join(claim.refs),
                "holds": claim.count(Verdict.HOLDS),
                "not-met": claim.count(Verdict.HYPOTHESIS_NOT_MET),
                "VIOLATED": claim.count(Verdict.VIOLATED),
                "skipped": claim.count(Verdict.SKIPPED),
                "exploratory": "yes" if claim.exploratory else "",
            }
        )
    lines = [f"catalog {report.catalog}  digest {report.catalog_digest[:16]}", pd.DataFrame(rows).to_string(index=False)]
    for claim in report.claims:
        for result in claim.results:
            if result.verdict == Verdict.VIOLATED:
                marker = "exploratory " if claim.exploratory else ""
                lines.append(f"{marker}VIOLATED {claim.claim} on {result.instance}: witness {result.witness}")
    for group in report.duplicates:
        lines.append(f"fingerprint duplicates: {', '.join(group)}")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        infos = [
            ClaimInfo(id=c.id, family=c.family, statement=c.statement, refs=references_of(c.id), exploratory=c.exploratory)
            for c in CLAIMS
        ]
        if args.json:
            print(json.dumps([i.model_dump() for i in infos], indent=2))
        else:
            print(pd.DataFrame([i.model_dump() for i in infos]).to_string(index=False))
        return 0
    selectors = ["all"] if args.all else args.claim
    if not selectors:
        raise UsageError("give --claim ID (repeatable) or --all")
    catalog = environment(args, default_catalog=BUILTIN)
    if catalog is None:
        raise CatalogError(args.catalog or "inline", ValueError("no catalog to verify"))
    report = run_claims(selectors, catalog, budgets_from_args(args), args.workers or settings.workers)
    if args.report:
        Path(args.report).write_text(report.model_dump_json(indent=2) + "\n")
    emit(args, report, render(report))
    return exit_code(report)
