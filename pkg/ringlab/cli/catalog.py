"""
catalog command: show a catalog, or save it as one numbered file per statement
"""

import argparse
from typing import Optional

import pandas as pd

from ringlab.cli.common import environment, emit, yes_no
from ringlab.core import spec_tree as st
from ringlab.core.dsl import print_spec
from ringlab.core.fingerprint import fingerprint
from ringlab.models import CatalogEntry, CatalogListing
from ringlab.services.catalog import BUILTIN, Catalog, save_catalog


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("catalog", help="Show or save a catalog")
    actions = parser.add_subparsers(dest="action", required=True, parser_class=type(parser))

    show = actions.add_parser("show", parents=[common], help="List the statements of a catalog")
    show.add_argument("path", nargs="?", default=None, help="Catalog file or directory (default: --catalog or builtin)")
    show.set_defaults(handler=cmd_show)

    save = actions.add_parser("save", parents=[common], help="Write one numbered .ring file per statement")
    save.add_argument("directory", help="Output directory")
    save.set_defaults(handler=cmd_save)


def _load(args: argparse.Namespace, path: Optional[str] = None) -> Catalog:
    catalog = environment(args, default_catalog=BUILTIN, source=path)
    assert catalog is not None
    return catalog


def listing(catalog: Catalog) -> CatalogListing:
    entries = []
    for _, statement in catalog.statements:
        entry = CatalogEntry(name=statement.name, kind="embedding", statement=print_spec(statement))
        if isinstance(statement, st.RingSpec):
            ring = catalog.rings[statement.name]
            entry = entry.model_copy(
                update={
                    "kind": "ring",
                    "order": ring.order,
                    "involution": ring.has_involution,
                    "fingerprint": fingerprint(ring).short_hash(),
                }
            )
        elif isinstance(statement, st.ModuleSpec):
            entry = entry.model_copy(update={"kind": "module", "order": catalog.modules[statement.name].order})
        entries.append(entry)
    return CatalogListing(catalog=catalog.name, digest=catalog.digest(), entries=entries, duplicates=catalog.duplicates)


def render(result: CatalogListing) -> str:
    table = pd.DataFrame(
        [
            {
                "name": e.name,
                "kind": e.kind,
                "order": "" if e.order is None else e.order,
                "involution": "" if e.involution is None else yes_no(e.involution),
                "fingerprint": e.fingerprint or "",
                "statement": e.statement,
            }
            for e in result.entries
        ]
    )
    lines = [f"catalog {result.catalog}  digest {result.digest[:16]}  entries {len(result.entries)}"]
    lines.append(table.to_string(index=False))
    lines.extend(f"fingerprint duplicates: {', '.join(group)}" for group in result.duplicates)
    return "\n".join(lines)


def cmd_show(args: argparse.Namespace) -> int:
    result = listing(_load(args, args.path))
    emit(args, result, render(result))
    return 0


def cmd_save(args: argparse.Namespace) -> int:
    catalog = _load(args)
    written = save_catalog(catalog, args.directory)
    if args.json:
        print(listing(catalog).model_dump_json(indent=2))
    else:
        for path in written:
            print(path)
    return 0
