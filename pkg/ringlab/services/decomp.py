"""
Clean-family decompositions a = e + u and the cleanness classification of a ring
"""

from typing import Dict, List, Optional

import numpy as np

from ringlab.core.rings import FinRing
from ringlab.errors import InvalidElement, InvariantViolation, NoDecomposition, NotAbelian, NotRickartAt
from ringlab.models import CleannessReport, Decomposition, DecompositionKind, Flag
from ringlab.services.elements import (
    annihilator_masks,
    classify_elements,
    is_abelian,
    principal_masks,
)
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


def _candidates(ring: FinRing, kind: DecompositionKind) -> np.ndarray:
    c = classify_elements(ring)
    if kind.star:
        if c.projection is None:
            return np.empty(0, dtype=np.int64)
        return c.projections
    return c.idempotents


def _decomposition(ring: FinRing, a: int, e: int) -> Decomposition:
    c = classify_elements(ring)
    masks = principal_masks(ring)
    u = ring.minus(a, e)
    return Decomposition(
        element=a,
        idempotent=e,
        complement=u,
        u_is_unit=bool(c.unit[u]),
        u_is_regular=bool(c.regular[u]),
        special=masks[a] & masks[e] == 1 << ring.zero,
        e_is_projection=bool(c.projection[e]) if c.projection is not None else None,
    )


def satisfies(decomposition: Decomposition, kind: DecompositionKind) -> bool:
    if kind.star and not decomposition.e_is_projection:
        return False
    if kind.needs_unit and not decomposition.u_is_unit:
        return False
    if not decomposition.u_is_regular:
        return False
    return decomposition.special or not kind.special


def check_element(ring: FinRing, a: int) -> None:
    if not 0 <= a < ring.order:
        raise InvalidElement(f"element {a} is not in {ring.label} (order {ring.order})")


def decompositions(ring: FinRing, a: int, kind: DecompositionKind) -> List[Decomposition]:
    """All decompositions of ``a`` of the given kind, by idempotent index"""
    kind = DecompositionKind(kind)
    check_element(ring, a)
    found = []
    for e in _candidates(ring, kind):
        d = _decomposition(ring, a, int(e))
        if satisfies(d, kind):
            found.append(d)
    return found


def decomposition_counts(ring: FinRing, kind: DecompositionKind) -> np.ndarray:
    """Number of decompositions of each element, vectorized over (a, e)"""

    def compute() -> np.ndarray:
        n = ring.order
        es = _candidates(ring, kind)
        if es.size == 0:
            return np.zeros(n, dtype=np.int64)
        c = classify_elements(ring)
        u = ring.add[np.arange(n)[:, None], ring.neg[es][None, :]]
        ok = c.unit[u] if kind.needs_unit else c.regular[u]
        if kind.special:
            masks = principal_masks(ring)
            zero = 1 << ring.zero
            special = np.array(
                [[masks[a] & masks[int(e)] == zero for e in es] for a in range(n)],
                dtype=bool,
            )
            ok = ok & special
        return ok.sum(axis=1)

    return ring.cached(f"counts:{kind.value}", compute)


def _first_failure(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(~mask)
    return int(bad[0]) if bad.size else None


def _existence_flag(ring: FinRing, kind: DecompositionKind) -> Flag:
    counts = decomposition_counts(ring, kind)
    witness = _first_failure(counts > 0)
    if witness is None:
        return Flag.true()
    return Flag.false(witness, note=f"element {witness} has no {kind.value} decomposition")


def _uniqueness_flag(ring: FinRing, kind: DecompositionKind) -> Flag:
    counts = decomposition_counts(ring, kind)
    witness = _first_failure(counts == 1)
    if witness is None:
        return Flag.true()
    return Flag.false(witness, note=f"element {witness} has {int(counts[witness])} {kind.value} decompositions")


def classify_cleanness(ring: FinRing) -> CleannessReport:
    def compute() -> CleannessReport:
        K = DecompositionKind
        flags: Dict[str, Flag] = {}
        kinds = [K.CLEAN, K.ALMOST_CLEAN, K.SPECIAL_CLEAN, K.SPECIAL_ALMOST_CLEAN]
        if ring.has_involution:
            kinds += [K.STAR_CLEAN, K.ALMOST_STAR_CLEAN, K.SPECIAL_STAR_CLEAN, K.SPECIAL_ALMOST_STAR_CLEAN]
        for kind in kinds:
            flags[kind.value] = _existence_flag(ring, kind)
            if kind.special:
                flags[f"uniquely_{kind.value}"] = _uniqueness_flag(ring, kind)
        report = CleannessReport(**flags)
        check_cleanness(ring, report)
        logger.debug("cleanness classified", label=ring.label, clean=report.clean.holds)
        return report

    return ring.cached("cleanness", compute)


def check_cleanness(ring: FinRing, report: CleannessReport) -> None:
    """The implications every cleanness report must satisfy"""
    implications = [
        ("special_clean", "clean"),
        ("special_almost_clean", "almost_clean"),
        ("clean", "almost_clean"),
        ("star_clean", "clean"),
        ("almost_star_clean", "almost_clean"),
        ("special_star_clean", "special_clean"),
        ("special_almost_star_clean", "special_almost_clean"),
    ]
    for premise, conclusion in implications:
        if getattr(report, premise).holds and getattr(report, conclusion).holds is False:
            raise InvariantViolation(f"{ring.label}: {premise} holds but {conclusion} does not")


def rickart_witness(ring: FinRing, a: int) -> Decomposition:
    """The special almost clean decomposition a = e + (a - e) where ann_r(a) = eR.

    Needs an abelian ring; raises NotRickartAt when no idempotent generates ann_r(a).
    """
    check_element(ring, a)
    abelian = is_abelian(ring)
    if not abelian.holds:
        raise NotAbelian(tuple(abelian.witness))  # type: ignore[arg-type]
    annihilator = annihilator_masks(ring)[a]
    masks = principal_masks(ring)
    for e in classify_elements(ring).idempotents:
        if masks[int(e)] == annihilator:
            d = _decomposition(ring, a, int(e))
            if not (d.u_is_regular and d.special):
                raise InvariantViolation(f"{ring.label}: annihilator witness {d} is not special almost clean")
            return d
    raise NotRickartAt(a)


def cs_witness(ring: FinRing, a: int) -> Decomposition:
    """Least idempotent e with a - e right regular (left multiplication injective).

    Exists for every element of a right CS ring; when the ring is also right
    nonsingular the complement is regular.
    """
    check_element(ring, a)
    c = classify_elements(ring)
    for e in c.idempotents:
        d = _decomposition(ring, a, int(e))
        if c.right_regular[d.complement]:
            return d
    raise NoDecomposition(f"{ring.label}: no idempotent e with {a} - e right regular")
