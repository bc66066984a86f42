"""
Finite rings given by operation tables
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, NewType, Optional, Sequence, Tuple

import numpy as np

from ringlab.errors import (
    BadInvolution,
    NoIdentity,
    NotAGroup,
    NotAssociative,
    NotDistributive,
    TableShapeError,
)
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)

Element = NewType("Element", int)


@dataclass(frozen=True)
class Construction:
    """How a ring was built; involutions that permute coordinates need it"""

    kind: str
    k: Optional[int] = None
    base: Optional["FinRing"] = None
    right: Optional["FinRing"] = None
    positions: Tuple[Tuple[int, int], ...] = ()


@dataclass(frozen=True)
class RingTables:
    """Unvalidated tables as read from a file or produced by a constructor"""

    add: Any
    mul: Any
    star: Any = None
    label: str = "raw"


@dataclass(frozen=True, eq=False)
class FinRing:
    """An immutable finite ring on the dense indices 0..order-1"""

    add: np.ndarray
    neg: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    star: Optional[np.ndarray] = None
    label: str = ""
    construction: Optional[Construction] = None
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    @property
    def has_involution(self) -> bool:
        return self.star is not None

    def elements(self) -> range:
        return range(self.order)

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def adjoint(self, a: int) -> int:
        if self.star is None:
            raise BadInvolution(f"{self.label} has no involution")
        return int(self.star[a])

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def cached(self, key: str, factory: Callable[[], Any]) -> Any:
        """Memoize a derived object on this (immutable) ring"""
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def opposite(self) -> "FinRing":
        """R^op on the same indices; left-hand questions about R are right-hand ones about R^op"""

        def build() -> FinRing:
            mul = np.ascontiguousarray(self.mul.T)
            mul.setflags(write=False)
            return FinRing(
                add=self.add,
                neg=self.neg,
                mul=mul,
                zero=self.zero,
                one=self.one,
                star=self.star,
                label=f"opposite({self.label})",
                construction=Construction("opposite", base=self),
            )

        return self.cached("opposite", build)

    def with_star(self, star: np.ndarray) -> "FinRing":
        star = np.asarray(star, dtype=np.int64)
        star.setflags(write=False)
        return FinRing(
            add=self.add,
            neg=self.neg,
            mul=self.mul,
            zero=self.zero,
            one=self.one,
            star=star,
            label=self.label,
            construction=self.construction,
        )

    def relabeled(self, label: str) -> "FinRing":
        return FinRing(
            add=self.add,
            neg=self.neg,
            mul=self.mul,
            zero=self.zero,
            one=self.one,
            star=self.star,
            label=label,
            construction=self.construction,
        )

    def __repr__(self) -> str:
        star = ", *" if self.star is not None else ""
        return f"FinRing({self.label!r}, order={self.order}{star})"


def _first(mismatch: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(v) for v in np.argwhere(mismatch)[0])


def _as_table(data: Any, shape: Sequence[int], name: str) -> np.ndarray:
    try:
        table = np.asarray(data, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise TableShapeError(f"{name} table is not an integer array: {e}")
    if table.shape != tuple(shape):
        raise TableShapeError(f"{name} table has shape {table.shape}, expected {tuple(shape)}")
    n = shape[-1] if name != "star" else shape[0]
    if table.size and (table.min() < 0 or table.max() >= n):
        raise TableShapeError(f"{name} table has entries outside 0..{n - 1}")
    return table


def check_involution(add: np.ndarray, mul: np.ndarray, one: int, star: np.ndarray) -> None:
    """Raise BadInvolution unless star is an anti-automorphism of order two"""
    n = add.shape[0]
    identity = np.arange(n)
    if not np.array_equal(star[star], identity):
        bad = int(np.flatnonzero(star[star] != identity)[0])
        raise BadInvolution("star is not an involution: (a*)* != a", (bad,))
    additive = star[add] != add[np.ix_(star, star)]
    if additive.any():
        raise BadInvolution("star is not additive: (a+b)* != a*+b*", _first(additive))
    reversed_products = star[mul] != mul[np.ix_(star, star)].T
    if reversed_products.any():
        raise BadInvolution("(ab)* != b*a*", _first(reversed_products))
    if int(star[one]) != one:
        raise BadInvolution("1* != 1", (one,))


def validate_ring(tables: RingTables) -> FinRing:
    """Check every ring axiom by full table scans and return the ring.

    Associativity and distributivity are O(n^3), one n x n slab per row.
    """
    add_raw = np.asarray(tables.add)
    if add_raw.ndim != 2 or add_raw.shape[0] != add_raw.shape[1] or add_raw.shape[0] == 0:
        raise TableShapeError(f"add table must be a non-empty square table, got shape {add_raw.shape}")
    n = add_raw.shape[0]
    add = _as_table(tables.add, (n, n), "add")
    mul = _as_table(tables.mul, (n, n), "mul")
    identity = np.arange(n)

    # additive abelian group
    zeros = [z for z in range(n) if np.array_equal(add[z], identity) and np.array_equal(add[:, z], identity)]
    if not zeros:
        raise NotAGroup("no additive identity")
    zero = zeros[0]
    if not np.array_equal(add, add.T):
        raise NotAGroup("addition is not commutative", _first(add != add.T))
    for a in range(n):
        bad = add[add[a]] != add[a][add]
        if bad.any():
            b, c = _first(bad)
            raise NotAGroup("addition is not associative", (a, b, c))
    hits = add == zero
    if not hits.any(axis=1).all():
        raise NotAGroup("element without additive inverse", (int(np.flatnonzero(~hits.any(axis=1))[0]),))
    neg = hits.argmax(axis=1)

    # multiplicative monoid
    ones = [e for e in range(n) if np.array_equal(mul[e], identity) and np.array_equal(mul[:, e], identity)]
    if not ones:
        raise NoIdentity("no two-sided multiplicative identity")
    one = ones[0]
    for a in range(n):
        bad = mul[mul[a]] != mul[a][mul]
        if bad.any():
            b, c = _first(bad)
            raise NotAssociative("multiplication is not associative", (a, b, c))

    # both distributive laws
    for a in range(n):
        left = mul[a][add] != add[np.ix_(mul[a], mul[a])]
        if left.any():
            b, c = _first(left)
            raise NotDistributive("a(b+c) != ab+ac", (a, b, c))
        column = mul[:, a]
        right = column[add] != add[np.ix_(column, column)]
        if right.any():
            b, c = _first(right)
            raise NotDistributive("(b+c)a != ba+ca", (a, b, c))

    star = None
    if tables.star is not None:
        star = _as_table(tables.star, (n,), "star")
        check_involution(add, mul, one, star)

    for table in (add, neg, mul) + ((star,) if star is not None else ()):
        table.setflags(write=False)
    logger.debug("ring validated", label=tables.label, order=n)
    return FinRing(add=add, neg=neg, mul=mul, zero=zero, one=one, star=star, label=tables.label)
