"""
Raw operation-table files

    order n
    add
    <n lines of n integers>
    mul
    <n lines of n integers>
    star                       (optional)
    <one line of n integers>

Module files use ``action`` (m lines of n integers) in place of ``mul``.
A file holding only a ``star`` section supplies an involution.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ringlab.core.rings import FinRing, RingTables
from ringlab.errors import TableShapeError

SECTIONS = ("add", "mul", "action", "star")


def _tokenize(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((number, line.split()))
    return rows


def parse_tables(text: str, source: str = "<tables>") -> Tuple[Optional[int], Dict[str, np.ndarray]]:
    """Split a table file into its sections; shapes are checked by the caller"""
    rows = _tokenize(text)
    order: Optional[int] = None
    sections: Dict[str, List[List[int]]] = {}
    current: Optional[str] = None
    for number, words in rows:
        head = words[0]
        if head == "order":
            if len(words) != 2 or not words[1].isdigit():
                raise TableShapeError(f"{source}:{number}: expected 'order <n>'")
            order = int(words[1])
            continue
        if head in SECTIONS:
            if head in sections:
                raise TableShapeError(f"{source}:{number}: duplicate section '{head}'")
            current = head
            sections[current] = []
            continue
        if current is None:
            raise TableShapeError(f"{source}:{number}: data before any section header")
        try:
            sections[current].append([int(w) for w in words])
        except ValueError:
            raise TableShapeError(f"{source}:{number}: non-integer entry in section '{current}'")
    tables = {}
    for name, values in sections.items():
        widths = {len(row) for row in values}
        if len(widths) > 1:
            raise TableShapeError(f"{source}: ragged rows in section '{name}'")
        tables[name] = np.asarray(values, dtype=np.int64)
    return order, tables


def read_ring_tables(path: Union[str, Path], label: Optional[str] = None) -> RingTables:
    path = Path(path)
    order, tables = parse_tables(path.read_text(), str(path))
    if "add" not in tables or "mul" not in tables:
        raise TableShapeError(f"{path}: ring table file needs 'add' and 'mul' sections")
    star = tables.get("star")
    if star is not None:
        star = star.reshape(-1)
    if order is not None and tables["add"].shape != (order, order):
        raise TableShapeError(f"{path}: declared order {order} but add table has shape {tables['add'].shape}")
    return RingTables(add=tables["add"], mul=tables["mul"], star=star, label=label or path.stem)


def read_star_table(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    _, tables = parse_tables(path.read_text(), str(path))
    if "star" not in tables:
        raise TableShapeError(f"{path}: no 'star' section")
    return tables["star"].reshape(-1)


def read_module_tables(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
    path = Path(path)
    order, tables = parse_tables(path.read_text(), str(path))
    if "add" not in tables or "action" not in tables:
        raise TableShapeError(f"{path}: module table file needs 'add' and 'action' sections")
    if order is not None and tables["add"].shape != (order, order):
        raise TableShapeError(f"{path}: declared order {order} but add table has shape {tables['add'].shape}")
    return tables["add"], tables["action"]


def _rows(table: np.ndarray) -> List[str]:
    return [" ".join(str(int(v)) for v in row) for row in np.atleast_2d(table)]


def format_ring_tables(ring: FinRing) -> str:
    lines = [f"order {ring.order}", "add", *_rows(ring.add), "mul", *_rows(ring.mul)]
    if ring.star is not None:
        lines += ["star", " ".join(str(int(v)) for v in ring.star)]
    return "\n".join(lines) + "\n"


def write_ring_tables(ring: FinRing, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_ring_tables(ring))
    return path


def format_module_tables(add: np.ndarray, action: np.ndarray) -> str:
    lines = [f"order {add.shape[0]}", "add", *_rows(add), "action", *_rows(action)]
    return "\n".join(lines) + "\n"


def write_module_tables(add: np.ndarray, action: np.ndarray, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_module_tables(add, action))
    return path
