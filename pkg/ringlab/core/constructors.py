"""
Ring constructors: zmod, gf, matrix, uppertri, product, opposite, raw

Canonical index orderings: zmod by residue; gf by coefficient vector
(sum c_i p^i); product left-major; matrix/uppertri row-major over base
indices with the first entry most significant.
"""

import dataclasses
from pathlib import Path
from typing import Mapping, Optional, Tuple, Union

import numpy as np
import sympy

from ringlab.config import Budgets
from ringlab.core import spec_tree as st
from ringlab.core.dsl import format_expr
from ringlab.core.rawtables import read_ring_tables, read_star_table
from ringlab.core.rings import Construction, FinRing, RingTables, check_involution, validate_ring
from ringlab.errors import (
    BadInvolution,
    NonPrimeCharacteristic,
    SizeBudgetExceeded,
    UnknownName,
)
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


def _check_order(what: str, order: int, budgets: Budgets) -> None:
    if order > budgets.max_order:
        raise SizeBudgetExceeded(what, order, budgets.max_order)


def _finish(
    add: np.ndarray,
    mul: np.ndarray,
    label: str,
    construction: Optional[Construction],
) -> FinRing:
    ring = validate_ring(RingTables(add=add, mul=mul, label=label))
    return dataclasses.replace(ring, construction=construction, _cache={})


def zmod(n: int, budgets: Budgets) -> FinRing:
    if n < 1:
        raise ValueError(f"zmod requires n >= 1, got {n}")
    _check_order(f"zmod({n})", n, budgets)
    residues = np.arange(n, dtype=np.int64)
    add = np.add.outer(residues, residues) % n
    mul = np.multiply.outer(residues, residues) % n
    return _finish(add, mul, f"zmod({n})", Construction("zmod", k=n))


def smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Low-to-high coefficients c_0..c_{k-1} of the lexicographically smallest
    monic irreducible x^k + c_{k-1}x^{k-1} + ... + c_0 over GF(p)."""
    x = sympy.Symbol("x")
    for value in range(p**k):
        coeffs = tuple((value // p**i) % p for i in range(k))
        poly = sympy.Poly([1, *reversed(coeffs)], x, modulus=p)
        if poly.is_irreducible:
            return coeffs
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


def gf(p: int, k: int, budgets: Budgets) -> FinRing:
    if not sympy.isprime(p):
        raise NonPrimeCharacteristic(f"gf({p}, {k}): {p} is not prime")
    if k < 1:
        raise ValueError(f"gf requires k >= 1, got {k}")
    q = p**k
    _check_order(f"gf({p}, {k})", q, budgets)
    modulus = smallest_irreducible(p, k)

    # companion matrix of the modulus acting on coefficient columns
    companion = np.zeros((k, k), dtype=np.int64)
    for i in range(k - 1):
        companion[i + 1, i] = 1
    for i in range(k):
        companion[i, k - 1] = (-modulus[i]) % p
    powers = [np.eye(k, dtype=np.int64)]
    for _ in range(k - 1):
        powers.append(powers[-1] @ companion % p)
    powers_arr = np.stack(powers)

    weights = p ** np.arange(k, dtype=np.int64)
    vectors = (np.arange(q, dtype=np.int64)[:, None] // weights) % p
    add = np.zeros((q, q), dtype=np.int64)
    for i in range(k):
        add += ((vectors[:, i][:, None] + vectors[:, i][None, :]) % p) * weights[i]
    multipliers = np.einsum("ai,ijk->ajk", vectors, powers_arr) % p
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        mul[a] = ((multipliers[a] @ vectors.T) % p).T @ weights
    label = f"gf({p})" if k == 1 else f"gf({p}, {k})"
    return _finish(add, mul, label, Construction("gf", k=k))


def matrix_positions(k: int, upper: bool) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(k) for j in range(k) if not upper or i <= j)


def decode_entries(index: np.ndarray, q: int, width: int) -> np.ndarray:
    """Base-ring entries of row-major matrix indices, first entry most significant"""
    entries = np.empty((index.shape[0], width), dtype=np.int64)
    remainder = index.astype(np.int64)
    for pos in reversed(range(width)):
        entries[:, pos] = remainder % q
        remainder = remainder // q
    return entries


def encode_entries(entries: np.ndarray, q: int) -> np.ndarray:
    width = entries.shape[-1]
    weights = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return entries @ weights


def matrix_ring(
    base: FinRing,
    k: int,
    upper: bool,
    budgets: Budgets,
) -> FinRing:
    kind = "uppertri" if upper else "matrix"
    if k < 1:
        raise ValueError(f"{kind} requires k >= 1, got {k}")
    positions = matrix_positions(k, upper)
    q = base.order
    order = q ** len(positions)
    label = f"{kind}({base.label}, {k})"
    _check_order(label, order, budgets)

    entries = decode_entries(np.arange(order), q, len(positions))
    weights = q ** np.arange(len(positions) - 1, -1, -1, dtype=np.int64)
    where = {p: i for i, p in enumerate(positions)}

    add = np.zeros((order, order), dtype=np.int64)
    for pos in range(len(positions)):
        column = entries[:, pos]
        add += base.add[np.ix_(column, column)] * weights[pos]

    mul = np.zeros((order, order), dtype=np.int64)
    for pos, (i, j) in enumerate(positions):
        acc = np.full((order, order), base.zero, dtype=np.int64)
        for l in range(k):
            if (i, l) in where and (l, j) in where:
                term = base.mul[np.ix_(entries[:, where[(i, l)]], entries[:, where[(l, j)]])]
                acc = base.add[acc, term]
        mul += acc * weights[pos]
    construction = Construction(kind, k=k, base=base, positions=positions)
    return _finish(add, mul, label, construction)


def product_ring(left: FinRing, right: FinRing, budgets: Budgets) -> FinRing:
    order = left.order * right.order
    label = f"product({left.label}, {right.label})"
    _check_order(label, order, budgets)
    index = np.arange(order)
    a, b = index // right.order, index % right.order
    add = left.add[np.ix_(a, a)] * right.order + right.add[np.ix_(b, b)]
    mul = left.mul[np.ix_(a, a)] * right.order + right.mul[np.ix_(b, b)]
    construction = Construction("product", base=left, right=right)
    return _finish(add, mul, label, construction)


def _noncommuting_pair(ring: FinRing) -> Optional[Tuple[int, int]]:
    bad = ring.mul != ring.mul.T
    if not bad.any():
        return None
    a, b = np.argwhere(bad)[0]
    return int(a), int(b)


def transpose_table(ring: FinRing) -> np.ndarray:
    """Transpose for matrix rings, anti-transpose (i,j) -> (k-1-j, k-1-i) for
    upper triangular ones, composed entrywise with the base involution if any."""
    c = ring.construction
    if c is None or c.kind not in ("matrix", "uppertri") or c.base is None or c.k is None:
        raise BadInvolution(f"transpose needs a matrix or uppertri ring, got {ring.label}")
    k, base = c.k, c.base
    if c.kind == "matrix":
        image = {(i, j): (j, i) for i, j in c.positions}
    else:
        image = {(i, j): (k - 1 - j, k - 1 - i) for i, j in c.positions}
    where = {p: i for i, p in enumerate(c.positions)}
    entries = decode_entries(np.arange(ring.order), base.order, len(c.positions))
    moved = np.empty_like(entries)
    for pos, p in enumerate(c.positions):
        column = entries[:, pos]
        moved[:, where[image[p]]] = base.star[column] if base.star is not None else column
    return encode_entries(moved, base.order)


def attach_involution(
    ring: FinRing,
    kind: str,
    path: Optional[Union[str, Path]] = None,
) -> FinRing:
    """Return ``ring`` carrying the involution ``kind``, re-validated"""
    if kind == "identity":
        pair = _noncommuting_pair(ring)
        if pair is not None:
            raise BadInvolution("identity is an involution only on commutative rings", pair)
        star = np.arange(ring.order)
    elif kind == "transpose":
        star = transpose_table(ring)
    elif kind == "swap":
        c = ring.construction
        if c is None or c.kind != "product" or c.base is None or c.right is None:
            raise BadInvolution(f"swap needs a product ring, got {ring.label}")
        left, right = c.base, c.right
        if not (np.array_equal(left.add, right.add) and np.array_equal(left.mul, right.mul)):
            raise BadInvolution(f"swap needs product(A, A), factors of {ring.label} differ")
        index = np.arange(ring.order)
        star = (index % right.order) * right.order + index // right.order
    elif kind == "raw":
        if path is None:
            raise BadInvolution("raw involution needs a table file")
        star = read_star_table(path)
        if star.shape != (ring.order,):
            raise BadInvolution(f"star table has {star.shape[0]} entries, ring has order {ring.order}")
    else:
        raise BadInvolution(f"unknown involution kind {kind!r}")
    check_involution(ring.add, ring.mul, ring.one, np.asarray(star, dtype=np.int64))
    logger.debug("involution attached", label=ring.label, kind=kind)
    return ring.with_star(star)


def construct(
    spec: Union[st.RingSpec, st.RingExpr],
    env: Optional[Mapping[str, FinRing]] = None,
    base_dir: Optional[Union[str, Path]] = None,
    budgets: Optional[Budgets] = None,
) -> FinRing:
    """Build the ring a specification denotes; deterministic in the expression"""
    budgets = budgets or Budgets.from_settings()
    env = env or {}
    root = Path(base_dir) if base_dir is not None else Path(".")

    def build(expr: st.RingExpr) -> FinRing:
        if isinstance(expr, st.ZMod):
            return zmod(expr.n, budgets)
        if isinstance(expr, st.GF):
            return gf(expr.p, expr.k, budgets)
        if isinstance(expr, st.Matrix):
            return matrix_ring(build(expr.base), expr.k, False, budgets)
        if isinstance(expr, st.UpperTri):
            return matrix_ring(build(expr.base), expr.k, True, budgets)
        if isinstance(expr, st.Product):
            return product_ring(build(expr.left), build(expr.right), budgets)
        if isinstance(expr, st.Opposite):
            return build(expr.base).opposite()
        if isinstance(expr, st.Raw):
            tables = read_ring_tables(root / expr.path)
            _check_order(expr.path, np.asarray(tables.add).shape[0], budgets)
            ring = validate_ring(tables)
            return dataclasses.replace(ring, construction=Construction("raw"), _cache={})
        if isinstance(expr, st.NameRef):
            if expr.name not in env:
                raise UnknownName(f"ring {expr.name!r} is not defined")
            return env[expr.name]
        raise TypeError(f"not a ring expression: {expr!r}")

    if isinstance(spec, st.RingSpec):
        ring = build(spec.expr).relabeled(spec.name)
        if spec.involution is not None:
            path = root / spec.involution.path if spec.involution.path else None
            ring = attach_involution(ring, spec.involution.kind, path)
        logger.info("ring constructed", label=ring.label, order=ring.order, involution=ring.has_involution)
        return ring
    ring = build(spec)
    return ring.relabeled(format_expr(spec))
