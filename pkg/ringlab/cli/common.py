"""
Options and helpers shared by every subcommand
"""

import argparse
from pathlib import Path
from typing import Iterable, Optional, Tuple

import pandas as pd
from pydantic import BaseModel

from ringlab.config import Budgets
from ringlab.core.constructors import construct
from ringlab.core.dsl import parse_spec
from ringlab.core.rings import FinRing
from ringlab.errors import RingLabError, UnknownName
from ringlab.models import Flag
from ringlab.services.catalog import Catalog, catalog_from_text, load_catalog
from ringlab.services.modules import FinModule


class UsageError(RingLabError, ValueError):
    """Bad command line; reported like any other input error"""


class Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit code 1"""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def common_options() -> argparse.ArgumentParser:
    """Flags every subcommand accepts, placed after the command name"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--json", action="store_true", help="Print the machine-readable report")
    parser.add_argument("--budget-order", type=positive_int, help="Largest ring order to construct")
    parser.add_argument("--budget-ideals", type=positive_int, help="Largest ideal or submodule lattice")
    parser.add_argument("--budget-assign", type=positive_int, help="Backtracking assignments per search")
    parser.add_argument("--budget-module", type=positive_int, help="Largest module order")
    parser.add_argument("--catalog", help="Catalog file, directory, or 'builtin'")
    parser.add_argument("--inline", help="Ring/module statements given as text")
    parser.add_argument("--metrics", help="Write prometheus metrics to this file after the run")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("--log-format", choices=["console", "json"], help="Log renderer")
    parser.add_argument("--workers", type=positive_int, help="Threads for catalog processing")
    return parser


def budgets_from_args(args: argparse.Namespace) -> Budgets:
    budgets = Budgets.from_settings()
    overrides = {
        "max_order": args.budget_order,
        "max_ideals": args.budget_ideals,
        "max_assignments": args.budget_assign,
        "max_module_order": args.budget_module,
    }
    return budgets.model_copy(update={k: v for k, v in overrides.items() if v is not None})


def environment(
    args: argparse.Namespace, default_catalog: Optional[str] = None, source: Optional[str] = None
) -> Optional[Catalog]:
    """The catalog named by ``source`` or --catalog, extended by the --inline statements.

    ``default_catalog`` is loaded only when neither a catalog nor inline text was given.
    """
    budgets = budgets_from_args(args)
    source = source or args.catalog or (None if args.inline else default_catalog)
    base = load_catalog(source, budgets) if source else None
    if args.inline:
        return catalog_from_text(args.inline, budgets=budgets, base=base)
    return base


def resolve_ring(args: argparse.Namespace, target: Optional[str]) -> Tuple[str, FinRing]:
    """The ring a command works on.

    ``target`` may be a ring name from the catalog or inline text, a ``.ring``
    file (its last ring is used), a ring statement or a bare ring expression.
    Without a target the last ring of --inline is used.
    """
    budgets = budgets_from_args(args)
    env = environment(args)
    rings = env.rings if env is not None else {}
    if target is None:
        if not args.inline or not rings:
            raise UsageError("name a ring, or define one with --inline")
        name = list(rings)[-1]
        return name, rings[name]
    if target in rings:
        return target, rings[target]
    path = Path(target)
    if path.suffix == ".ring" and path.exists():
        catalog = load_catalog(path, budgets)
        if not catalog.rings:
            raise UnknownName(f"{target} defines no ring")
        name = list(catalog.rings)[-1]
        return name, catalog.rings[name]
    spec = parse_spec(target)
    return spec.name, construct(spec, rings, ".", budgets)


def resolve_module(args: argparse.Namespace, target: Optional[str]) -> Tuple[str, FinModule]:
    """A module by name, or defined by a ``module ... over ...`` statement given as the target"""
    env = environment(args)
    if target is not None and env is not None and target in env.modules:
        return target, env.modules[target]
    if target is not None:
        env = catalog_from_text(target, name="module", budgets=budgets_from_args(args), base=env)
    if env is None or not env.modules:
        raise UsageError("name a module, or define one with --inline")
    if target is not None and target in env.modules:
        return target, env.modules[target]
    name = list(env.modules)[-1]
    return name, env.modules[name]


def yes_no(holds: Optional[bool]) -> str:
    if holds is None:
        return "-"
    return "yes" if holds else "no"


def flag_table(flags: Iterable[Tuple[str, Flag]]) -> pd.DataFrame:
    """One row per flag: value, least witness, note"""
    rows = [
        {
            "property": name,
            "holds": yes_no(flag.holds),
            "witness": "" if flag.witness is None else str(flag.witness),
            "note": flag.note or "",
        }
        for name, flag in flags
    ]
    return pd.DataFrame(rows, columns=["property", "holds", "witness", "note"])


def flags_of(model: BaseModel) -> Iterable[Tuple[str, Flag]]:
    return [(name, value) for name, value in model if isinstance(value, Flag)]


def emit(args: argparse.Namespace, model: BaseModel, text: str) -> None:
    """Print the JSON document in --json mode, the text rendering otherwise"""
    if args.json:
        print(model.model_dump_json(indent=2))
    else:
        print(text)
