"""
Catalogs of rings, modules and embedding pairs, read from and written to .ring files
"""

import dataclasses
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ringlab.config import Budgets
from ringlab.core import spec_tree as st
from ringlab.core.constructors import construct
from ringlab.core.dsl import parse_document, print_spec
from ringlab.core.fingerprint import fingerprint
from ringlab.core.rawtables import write_module_tables, write_ring_tables
from ringlab.core.rings import FinRing
from ringlab.errors import BudgetExceeded, CatalogError, RingLabError, SizeBudgetExceeded
from ringlab.services.modules import FinModule, construct_module
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)

BUILTIN = "builtin"
BUILTIN_DIR = Path(__file__).resolve().parent.parent / "catalog"
BUILTIN_FILE = BUILTIN_DIR / "builtin.ring"


@dataclass
class Catalog:
    """Constructed catalog members in statement order"""

    name: str
    rings: Dict[str, FinRing] = field(default_factory=dict)
    ring_specs: Dict[str, st.RingSpec] = field(default_factory=dict)
    modules: Dict[str, FinModule] = field(default_factory=dict)
    module_specs: Dict[str, st.ModuleSpec] = field(default_factory=dict)
    embeddings: List[st.EmbeddingSpec] = field(default_factory=list)
    statements: List[Tuple[Path, st.Statement]] = field(default_factory=list)
    duplicates: List[List[str]] = field(default_factory=list)

    def digest(self) -> str:
        """sha256 over the printed statements and every ring's tables"""
        h = hashlib.sha256()
        for _, statement in self.statements:
            h.update(print_spec(statement).encode())
            h.update(b"\n")
        for ring in self.rings.values():
            h.update(ring.add.tobytes())
            h.update(ring.mul.tobytes())
            if ring.star is not None:
                h.update(ring.star.tobytes())
        return h.hexdigest()

    def extended(self, name: str) -> "Catalog":
        """A copy that further statements can be added to without touching this one"""
        return Catalog(
            name=name,
            rings=dict(self.rings),
            ring_specs=dict(self.ring_specs),
            modules=dict(self.modules),
            module_specs=dict(self.module_specs),
            embeddings=list(self.embeddings),
            statements=list(self.statements),
        )

    def star_rings(self) -> Dict[str, FinRing]:
        return {name: ring for name, ring in self.rings.items() if ring.has_involution}

    def __len__(self) -> int:
        return len(self.rings) + len(self.modules)


def _source_files(path: Path) -> List[Path]:
    if path.is_dir():
        files = sorted(path.glob("*.ring"))
        if not files:
            raise CatalogError(str(path), ValueError("directory holds no .ring files"))
        return files
    if not path.exists():
        raise CatalogError(str(path), FileNotFoundError("no such catalog file"))
    return [path]


def _flag_duplicates(catalog: Catalog) -> None:
    groups: Dict[Tuple[object, ...], List[str]] = {}
    for name, ring in catalog.rings.items():
        key = fingerprint(ring).as_tuple() + (ring.has_involution,)
        groups.setdefault(key, []).append(name)
    catalog.duplicates = [names for names in groups.values() if len(names) > 1]
    for names in catalog.duplicates:
        logger.warning("fingerprint duplicates kept", catalog=catalog.name, instances=names)


def load_catalog(source: Union[str, Path] = BUILTIN, budgets: Optional[Budgets] = None) -> Catalog:
    """Parse and construct every statement of a catalog file or directory.

    ``builtin`` names the catalog shipped with the package. A directory is read
    as the concatenation of its ``*.ring`` files in file-name order, so later
    files may refer to rings named in earlier ones. Any failure is re-raised as
    CatalogError naming the file and, when known, the line.
    """
    budgets = budgets or Budgets.from_settings()
    path = BUILTIN_FILE if str(source) == BUILTIN else Path(source)
    catalog = Catalog(name=str(source))
    for file in _source_files(path):
        try:
            text = file.read_text()
        except OSError as e:
            raise CatalogError(str(file), e)
        _add_document(catalog, file, text, budgets)
    _finish(catalog)
    return catalog


def catalog_from_text(
    text: str,
    name: str = "inline",
    base_dir: Union[str, Path] = ".",
    budgets: Optional[Budgets] = None,
    base: Optional[Catalog] = None,
) -> Catalog:
    """A catalog built from DSL text given on the command line.

    Raw table paths resolve against ``base_dir``. With ``base`` the text extends
    a copy of that catalog and may name its rings and modules.
    """
    budgets = budgets or Budgets.from_settings()
    catalog = Catalog(name=name) if base is None else base.extended(name)
    _add_document(catalog, Path(base_dir) / f"<{name}>", text, budgets)
    _finish(catalog)
    return catalog


def _add_document(catalog: Catalog, file: Path, text: str, budgets: Budgets) -> None:
    try:
        statements = parse_document(text)
    except RingLabError as e:
        raise CatalogError(str(file), e, getattr(e, "line", None))
    for statement in statements:
        try:
            _add(catalog, file, statement, budgets)
        except (CatalogError, BudgetExceeded, SizeBudgetExceeded):
            raise
        except (RingLabError, OSError) as e:
            raise CatalogError(str(file), e, statement.line)


def _finish(catalog: Catalog) -> None:
    _flag_duplicates(catalog)
    logger.info(
        "catalog loaded",
        catalog=catalog.name,
        rings=len(catalog.rings),
        modules=len(catalog.modules),
        embeddings=len(catalog.embeddings),
    )


def _add(catalog: Catalog, file: Path, statement: st.Statement, budgets: Budgets) -> None:
    name = statement.name
    if name in catalog.rings or name in catalog.modules or any(e.name == name for e in catalog.embeddings):
        raise CatalogError(str(file), ValueError(f"name {name!r} defined twice"), statement.line)
    if isinstance(statement, st.RingSpec):
        catalog.rings[name] = construct(statement, catalog.rings, file.parent, budgets)
        catalog.ring_specs[name] = statement
    elif isinstance(statement, st.ModuleSpec):
        catalog.modules[name] = construct_module(statement, catalog.rings, catalog.modules, file.parent, budgets)
        catalog.module_specs[name] = statement
    else:
        for ring_name in (statement.source, statement.target):
            if ring_name not in catalog.rings:
                raise CatalogError(str(file), ValueError(f"ring {ring_name!r} is not defined"), statement.line)
        catalog.embeddings.append(statement)
    catalog.statements.append((file, statement))


def _inline(expr: st.RingExpr, specs: Dict[str, st.RingSpec]) -> Optional[st.RingExpr]:
    """Replace name references by their definitions; None when that changes meaning or needs a file"""
    if isinstance(expr, st.NameRef):
        spec = specs.get(expr.name)
        if spec is None or spec.involution is not None:
            return None
        return _inline(spec.expr, specs)
    if isinstance(expr, st.Raw):
        return None
    if isinstance(expr, (st.Matrix, st.UpperTri, st.Opposite)):
        base = _inline(expr.base, specs)
        if base is None:
            return None
        if isinstance(expr, st.Opposite):
            return st.Opposite(base)
        return dataclasses.replace(expr, base=base)
    if isinstance(expr, st.Product):
        left, right = _inline(expr.left, specs), _inline(expr.right, specs)
        if left is None or right is None:
            return None
        return st.Product(left, right)
    return expr


def _ring_statement(name: str, ring: FinRing, spec: st.RingSpec, catalog: Catalog, directory: Path) -> st.RingSpec:
    expr = _inline(spec.expr, catalog.ring_specs)
    if expr is not None and (spec.involution is None or spec.involution.kind != "raw"):
        return st.RingSpec(name=name, expr=expr, involution=spec.involution)
    tables = f"{name}.tbl"
    write_ring_tables(ring, directory / tables)
    involution = st.Involution("raw", tables) if ring.star is not None else None
    return st.RingSpec(name=name, expr=st.Raw(tables), involution=involution)


def _module_statement(name: str, module: FinModule, spec: st.ModuleSpec, directory: Path) -> st.ModuleSpec:
    if _module_self_contained(spec.expr):
        return st.ModuleSpec(name=name, ring=spec.ring, expr=spec.expr)
    tables = f"{name}.mod"
    write_module_tables(module.add, module.action, directory / tables)
    return st.ModuleSpec(name=name, ring=spec.ring, expr=st.RawModule(tables))


def _module_self_contained(expr: st.ModuleExpr) -> bool:
    if isinstance(expr, (st.Free, st.Cyclic)):
        return True
    if isinstance(expr, st.DirectSum):
        return all(_module_self_contained(p) for p in expr.parts)
    return False


def save_catalog(catalog: Catalog, directory: Union[str, Path]) -> List[Path]:
    """One .ring file per statement, numbered so a directory load keeps the order.

    Rings are written self-contained: name references are inlined, and rings
    that cannot be expressed that way (raw tables, references to rings with an
    involution) get their tables written next to the statement.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for ordinal, (_, statement) in enumerate(catalog.statements, start=1):
        name = statement.name
        if isinstance(statement, st.RingSpec):
            out: st.Statement = _ring_statement(name, catalog.rings[name], statement, catalog, directory)
        elif isinstance(statement, st.ModuleSpec):
            out = _module_statement(name, catalog.modules[name], statement, directory)
        else:
            out = statement
        path = directory / f"{ordinal:03d}-{name}.ring"
        path.write_text(print_spec(out) + "\n")
        written.append(path)
    logger.info("catalog saved", catalog=catalog.name, directory=str(directory), files=len(written))
    return written

