"""
decompose command: every a = e + u of one kind, or a constructive witness
"""

import argparse
from typing import List

from ringlab.cli.common import emit, resolve_ring
from ringlab.models import Decomposition, DecompositionKind, DecompositionListing
from ringlab.services.decomp import check_element, cs_witness, decompositions, rickart_witness


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("decompose", parents=[common], help="List decompositions a = e + u")
    parser.add_argument("ring", nargs="?", help="Ring name, .ring file, statement or expression")
    parser.add_argument("--element", type=int, required=True, help="Element index")
    parser.add_argument(
        "--kind",
        choices=[k.value for k in DecompositionKind],
        default=DecompositionKind.CLEAN.value,
        help="Decomposition kind (default clean)",
    )
    parser.add_argument(
        "--witness",
        choices=["rickart", "cs"],
        help="Print the annihilator witness of an abelian Rickart ring, or the right regular witness of a CS ring",
    )
    parser.set_defaults(handler=cmd_decompose)


def describe(d: Decomposition) -> str:
    tags = []
    if d.u_is_unit:
        tags.append("unit")
    elif d.u_is_regular:
        tags.append("regular")
    if d.special:
        tags.append("special")
    if d.e_is_projection:
        tags.append("projection")
    return f"e={d.idempotent} u={d.complement}" + (f"  ({', '.join(tags)})" if tags else "")


def render(listing: DecompositionListing) -> str:
    if not listing.decompositions:
        return "none"
    return "\n".join(describe(d) for d in listing.decompositions)


def cmd_decompose(args: argparse.Namespace) -> int:
    name, ring = resolve_ring(args, args.ring)
    check_element(ring, args.element)
    found: List[Decomposition]
    if args.witness == "rickart":
        found = [rickart_witness(ring, args.element)]
    elif args.witness == "cs":
        found = [cs_witness(ring, args.element)]
    else:
        found = decompositions(ring, args.element, DecompositionKind(args.kind))
    listing = DecompositionListing(
        ring=name,
        element=args.element,
        kind=args.kind if args.witness is None else args.witness,
        witness=args.witness,
        decompositions=found,
    )
    emit(args, listing, render(listing))
    return 0
