"""
Element classification: idempotents, units, regular elements, projections,
annihilators, principal ideals and centrality
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ringlab.core.bitsets import indices_from_mask, row_masks
from ringlab.core.rings import FinRing
from ringlab.errors import InvariantViolation
from ringlab.models import ElementReport, Flag
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Ideal:
    """A one-sided ideal of ``ring`` stored as an element bitmask"""

    ring: FinRing
    mask: int
    side: str = "right"

    @property
    def elements(self) -> np.ndarray:
        return indices_from_mask(self.mask, self.ring.order)

    def __contains__(self, element: object) -> bool:
        return bool((self.mask >> int(element)) & 1)  # type: ignore[call-overload]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __le__(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    def as_list(self) -> List[int]:
        return [int(i) for i in self.elements]


@dataclass(frozen=True, eq=False)
class ElementClassification:
    """Per-element boolean arrays; ``inverse`` is -1 off the units"""

    idempotent: np.ndarray
    unit: np.ndarray
    left_regular: np.ndarray
    right_regular: np.ndarray
    regular: np.ndarray
    central: np.ndarray
    inverse: np.ndarray
    projection: Optional[np.ndarray] = None

    @property
    def idempotents(self) -> np.ndarray:
        return np.flatnonzero(self.idempotent)

    @property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.unit)

    @property
    def projections(self) -> np.ndarray:
        if self.projection is None:
            return np.empty(0, dtype=np.int64)
        return np.flatnonzero(self.projection)


def classify_elements(ring: FinRing) -> ElementClassification:
    """Exact flags by full table scans, cached on the ring"""

    def compute() -> ElementClassification:
        mul, n = ring.mul, ring.order
        index = np.arange(n)
        idempotent = mul[index, index] == index
        hits = (mul == ring.one) & (mul.T == ring.one)
        unit = hits.any(axis=1)
        inverse = np.where(unit, hits.argmax(axis=1), -1)
        zero_hits = mul == ring.zero
        # a is right regular when ax = 0 forces x = 0: row a holds zero exactly once
        right_regular = zero_hits.sum(axis=1) == 1
        left_regular = zero_hits.sum(axis=0) == 1
        central = (mul == mul.T).all(axis=1)
        projection = None
        if ring.star is not None:
            projection = idempotent & (ring.star == index)
        result = ElementClassification(
            idempotent=idempotent,
            unit=unit,
            left_regular=left_regular,
            right_regular=right_regular,
            regular=left_regular & right_regular,
            central=central,
            inverse=inverse,
            projection=projection,
        )
        check_classification(ring, result)
        logger.debug(
            "elements classified",
            label=ring.label,
            idempotents=int(idempotent.sum()),
            units=int(unit.sum()),
        )
        return result

    return ring.cached("elements", compute)


def check_classification(ring: FinRing, c: ElementClassification) -> None:
    """Internal consistency of the element flags"""
    if (c.unit & ~c.regular).any():
        raise InvariantViolation(f"{ring.label}: unit {int(np.flatnonzero(c.unit & ~c.regular)[0])} is a zero-divisor")
    complements = ring.add[ring.one, ring.neg[c.idempotents]]
    if not c.idempotent[complements].all():
        raise InvariantViolation(f"{ring.label}: idempotents not closed under e -> 1 - e")
    if c.projection is not None and (c.projection & ~c.idempotent).any():
        raise InvariantViolation(f"{ring.label}: projection that is not idempotent")


def finite_regular_collapse(ring: FinRing) -> Optional[int]:
    """Least regular element that is not a unit; None when regular elements are exactly the units"""
    c = classify_elements(ring)
    stray = np.flatnonzero(c.regular != c.unit)
    return int(stray[0]) if stray.size else None


def principal_masks(ring: FinRing) -> List[int]:
    """Mask of aR for every a"""
    return ring.cached("principal_right", lambda: row_masks(ring.mul, ring.order))


def annihilator_masks(ring: FinRing) -> List[int]:
    """Mask of ann_r(a) for every a"""

    def compute() -> List[int]:
        flags = ring.mul == ring.zero
        packed = np.packbits(flags, axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    return ring.cached("annihilator_right", compute)


def right_annihilator(ring: FinRing, a: int) -> Ideal:
    return Ideal(ring, annihilator_masks(ring)[a], "right")


def left_annihilator(ring: FinRing, a: int) -> Ideal:
    return Ideal(ring, annihilator_masks(ring.opposite())[a], "left")


def principal_right_ideal(ring: FinRing, a: int) -> Ideal:
    return Ideal(ring, principal_masks(ring)[a], "right")


def is_abelian(ring: FinRing) -> Flag:
    """All idempotents central; the witness is the least non-commuting pair (e, x)"""
    c = classify_elements(ring)
    for e in c.idempotents:
        bad = np.flatnonzero(ring.mul[e] != ring.mul[:, e])
        if bad.size:
            return Flag.false((int(e), int(bad[0])), note="idempotent e with ex != xe")
    return Flag.true()


def abelian_witness(ring: FinRing) -> Optional[Tuple[int, int]]:
    flag = is_abelian(ring)
    return None if flag.holds else tuple(flag.witness)  # type: ignore[return-value]


def element_report(ring: FinRing) -> ElementReport:
    c = classify_elements(ring)

    def listed(flags: np.ndarray) -> List[int]:
        return [int(i) for i in np.flatnonzero(flags)]

    return ElementReport(
        idempotents=listed(c.idempotent),
        units=listed(c.unit),
        regular=listed(c.regular),
        left_regular=listed(c.left_regular),
        right_regular=listed(c.right_regular),
        central=listed(c.central),
        projections=listed(c.projection) if c.projection is not None else None,
        inverses={int(u): int(c.inverse[u]) for u in c.units},
        abelian=is_abelian(ring),
    )
