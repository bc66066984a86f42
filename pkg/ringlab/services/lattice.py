"""
Submodule and right-ideal lattices, essentiality, summands, (C1)-(C3),
singular submodules and the ring-level classes
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ringlab.config import Budgets
from ringlab.core.bitsets import coset_union, indices_from_mask, mask_from_indices, popcount, sum_closure
from ringlab.core.rings import FinRing
from ringlab.errors import BudgetExceeded, InvariantViolation, NotContained
from ringlab.models import Flag, IdealEntry, LatticeReport, RingClassReport
from ringlab.services.elements import (
    Ideal,
    annihilator_masks,
    classify_elements,
    principal_masks,
)
from ringlab.services.homs import Submodule, find_isomorphism
from ringlab.services.modules import FinModule, quotient_module, regular_module
from ringlab.utils.logging_config import get_logger
from ringlab.utils.metrics import record_budget_skip, record_stage

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SubmoduleLattice:
    """Every submodule of ``module``, ordered by size then by sorted element list"""

    module: FinModule
    members: Tuple[int, ...]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._index

    @property
    def _index(self) -> frozenset:
        return self.module.cached("lattice_index", lambda: frozenset(self.members))

    def elements(self, mask: int) -> List[int]:
        return [int(i) for i in indices_from_mask(mask, self.module.order)]


def _canonical(module: FinModule, masks: Sequence[int]) -> Tuple[int, ...]:
    m = module.order
    return tuple(sorted(masks, key=lambda mask: (popcount(mask), tuple(indices_from_mask(mask, m)))))


def submodules(module: FinModule, limit: int) -> SubmoduleLattice:
    """Closure of the cyclic submodules xR under sums; BudgetExceeded past ``limit``"""

    def compute() -> SubmoduleLattice:
        with record_stage("submodules", label=module.label):
            members = sum_closure(
                module.add, module.cyclic_masks(), module.zero_mask, module.order, limit, f"submodules of {module.label}"
            )
            check_lattice(module, members)
        logger.info("submodule lattice enumerated", label=module.label, size=len(members))
        return SubmoduleLattice(module, _canonical(module, members))

    lattice = module.cached("lattice", compute)
    if len(lattice) > limit:
        raise BudgetExceeded(f"submodules of {module.label}", limit)
    return lattice


def check_lattice(module: FinModule, members: Sequence[int]) -> None:
    """0 and M are members, meets are members, and N + xR is a member for every N and x.

    Every submodule is a sum of cyclics, so the last condition gives closure under +.
    """
    index = set(members)
    if module.zero_mask not in index or module.full_mask not in index:
        raise InvariantViolation(f"{module.label}: submodule lattice lacks 0 or the whole module")
    ordered = sorted(index)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a & b not in index:
                raise InvariantViolation(f"{module.label}: intersection of two submodules is missing from the lattice")
    cyclics = [(c, indices_from_mask(c, module.order)) for c in set(module.cyclic_masks())]
    for a in ordered:
        elements = indices_from_mask(a, module.order)
        for c, c_elements in cyclics:
            if c & ~a == 0:
                continue
            if coset_union(module.add, elements, a, c_elements, module.order) not in index:
                raise InvariantViolation(f"{module.label}: sum of two submodules is missing from the lattice")


def right_ideals(ring: FinRing, budgets: Budgets) -> SubmoduleLattice:
    return submodules(regular_module(ring), budgets.max_ideals)


def left_ideals(ring: FinRing, budgets: Budgets) -> SubmoduleLattice:
    return submodules(regular_module(ring.opposite()), budgets.max_ideals)


# essentiality --------------------------------------------------------------

def essential_hits(module: FinModule, inner: int) -> int:
    """Mask of the x with xR meeting ``inner`` in a nonzero element"""

    def compute() -> int:
        nonzero = indices_from_mask(inner & ~module.zero_mask, module.order)
        if nonzero.size == 0:
            return 0
        hits = module.cyclic_membership()[:, nonzero].any(axis=1)
        return mask_from_indices(np.flatnonzero(hits), module.order)

    return module.cached(f"hits:{inner}", compute)


def is_essential_in(module: FinModule, inner: int, outer: int) -> bool:
    """``inner`` essential in ``outer``: every nonzero x of outer has xR meeting inner"""
    if inner & ~outer:
        raise NotContained(f"{module.label}: submodule is not contained in the candidate essential extension")
    return outer & ~essential_hits(module, inner) & ~module.zero_mask == 0


def is_essential(inner: Ideal, outer: Ideal) -> bool:
    """Essentiality of right ideals, by the principal-submodule criterion"""
    if inner.ring is not outer.ring:
        raise ValueError("ideals of different rings")
    ring = inner.ring if inner.side == "right" else inner.ring.opposite()
    return is_essential_in(regular_module(ring), inner.mask, outer.mask)


# summands ------------------------------------------------------------------

def summand_map(ring: FinRing) -> Dict[int, List[int]]:
    """Mask of eR -> the idempotents e generating it"""

    def compute() -> Dict[int, List[int]]:
        masks = principal_masks(ring)
        result: Dict[int, List[int]] = {}
        for e in classify_elements(ring).idempotents:
            result.setdefault(masks[int(e)], []).append(int(e))
        return result

    return ring.cached("summand_map", compute)


def summands(ring: FinRing) -> List[Ideal]:
    """The direct summands {eR} of R_R in canonical order"""
    module = regular_module(ring)
    return [Ideal(ring, mask) for mask in _canonical(module, list(summand_map(ring)))]


def module_summands(lattice: SubmoduleLattice) -> Tuple[int, ...]:
    """Summands by complement search: N has N' with N ∩ N' = 0 and |N||N'| = |M|"""
    module = lattice.module

    def compute() -> Tuple[int, ...]:
        by_size: Dict[int, List[int]] = {}
        for mask in lattice:
            by_size.setdefault(popcount(mask), []).append(mask)
        zero = module.zero_mask
        found = []
        for mask in lattice:
            size = popcount(mask)
            if module.order % size:
                continue
            if any(mask & other == zero for other in by_size.get(module.order // size, [])):
                found.append(mask)
        return tuple(found)

    return module.cached("summands", compute)


# (C1)-(C3) -----------------------------------------------------------------

def _listed(module: FinModule, mask: int) -> List[int]:
    return [int(i) for i in indices_from_mask(mask, module.order)]


def condition_c1(lattice: SubmoduleLattice, summand_masks: Sequence[int]) -> Flag:
    module = lattice.module
    summand_set = set(summand_masks)
    for mask in lattice:
        if mask in summand_set:
            continue
        hits = essential_hits(module, mask)
        zero = module.zero_mask
        if not any(mask & ~s == 0 and s & ~hits & ~zero == 0 for s in summand_masks):
            return Flag.false(_listed(module, mask), note="submodule not essential in any summand")
    return Flag.true()


def condition_c3(lattice: SubmoduleLattice, summand_masks: Sequence[int]) -> Flag:
    module = lattice.module
    zero = module.zero_mask
    summand_set = set(summand_masks)
    ordered = [m for m in lattice if m in summand_set]
    for i, a in enumerate(ordered):
        elements_a = indices_from_mask(a, module.order)
        for b in ordered[i + 1:]:
            if a & b != zero:
                continue
            total = coset_union(module.add, elements_a, a, indices_from_mask(b, module.order), module.order)
            if total not in summand_set:
                return Flag.false([_listed(module, a), _listed(module, b)], note="A + B is not a summand")
    return Flag.true()


def condition_c2(
    lattice: SubmoduleLattice,
    summand_masks: Sequence[int],
    isomorphic_to_summand: Callable[[int], Optional[int]],
) -> Flag:
    summand_set = set(summand_masks)
    for mask in lattice:
        if mask in summand_set:
            continue
        summand = isomorphic_to_summand(mask)
        if summand is not None:
            module = lattice.module
            return Flag.false(
                [_listed(module, mask), _listed(module, summand)],
                note="submodule isomorphic to a summand but not a summand",
            )
    return Flag.true()


def module_isomorphic_summand(lattice: SubmoduleLattice, summand_masks: Sequence[int], limit: int) -> Callable[[int], Optional[int]]:
    """Isomorphism search against every summand of the same size"""
    module = lattice.module

    def search(mask: int) -> Optional[int]:
        for s in summand_masks:
            if popcount(s) != popcount(mask):
                continue
            if find_isomorphism(Submodule(module, mask), Submodule(module, s), limit) is not None:
                return s
        return None

    return search


def ring_ideals_isomorphic_to_summands(ring: FinRing) -> Dict[int, Tuple[int, int]]:
    """Right ideals isomorphic to some eR: the mR with m in Re and ann_r(m) ∩ eR = 0.

    Maps mask(mR) -> (e, m). Homs eR -> R_R are x -> mx for m in Re.
    """

    def compute() -> Dict[int, Tuple[int, int]]:
        masks = principal_masks(ring)
        annihilators = annihilator_masks(ring)
        zero = 1 << ring.zero
        found: Dict[int, Tuple[int, int]] = {}
        for summand, idempotents in summand_map(ring).items():
            e = idempotents[0]
            for m in np.flatnonzero(ring.mul[:, e] == np.arange(ring.order)):
                if annihilators[int(m)] & summand == zero:
                    found.setdefault(masks[int(m)], (e, int(m)))
        return found

    return ring.cached("iso_to_summand", compute)


def cs_conditions(ring: FinRing, budgets: Budgets) -> Dict[str, Flag]:
    """C1, C2, C3 of R_R plus the derived CS, quasi-continuous and continuous flags"""
    lattice = right_ideals(ring, budgets)
    summand_masks = [s.mask for s in summands(ring)]
    iso = ring_ideals_isomorphic_to_summands(ring)
    with record_stage("cs_conditions", label=ring.label):
        c1 = condition_c1(lattice, summand_masks)
        c2 = condition_c2(lattice, summand_masks, lambda mask: summand_of(iso, ring, mask))
        c3 = condition_c3(lattice, summand_masks)
    return derived_conditions(c1, c2, c3)


def summand_of(iso: Dict[int, Tuple[int, int]], ring: FinRing, mask: int) -> Optional[int]:
    if mask not in iso:
        return None
    e, _ = iso[mask]
    return principal_masks(ring)[e]


def derived_conditions(c1: Flag, c2: Flag, c3: Flag) -> Dict[str, Flag]:
    return {
        "C1": c1,
        "C2": c2,
        "C3": c3,
        "CS": c1,
        "quasi_continuous": conjunction(c1, c3),
        "continuous": conjunction(c1, c2),
    }


def conjunction(*flags: Flag) -> Flag:
    """Kleene conjunction; the first false flag supplies the witness"""
    for flag in flags:
        if flag.holds is False:
            return flag
    if any(flag.holds is None for flag in flags):
        return Flag.skipped(next(f.note for f in flags if f.holds is None) or "not computed")
    return Flag.true()


# singular submodule --------------------------------------------------------

def singular_mask(module: FinModule) -> int:
    """Z(M) = {x : ann_R(x) is an essential right ideal}; asserted to be a submodule"""

    def compute() -> int:
        ring_module = regular_module(module.ring)
        full = ring_module.full_mask
        verdicts: Dict[int, bool] = {}
        members = []
        for x in range(module.order):
            ann = module.annihilator_mask(x)
            if ann not in verdicts:
                verdicts[ann] = is_essential_in(ring_module, ann, full)
            if verdicts[ann]:
                members.append(x)
        mask = mask_from_indices(np.asarray(members, dtype=np.int64), module.order)
        check_submodule(module, mask, "singular submodule")
        return mask

    return module.cached("singular", compute)


def check_submodule(module: FinModule, mask: int, what: str) -> None:
    elements = indices_from_mask(mask, module.order)
    inside = np.zeros(module.order, dtype=bool)
    inside[elements] = True
    if not inside[module.add[np.ix_(elements, elements)]].all() or not inside[module.action[elements]].all():
        raise InvariantViolation(f"{module.label}: {what} is not a submodule")


def singular_ideal(ring: FinRing) -> Ideal:
    return Ideal(ring, singular_mask(regular_module(ring)))


def left_singular_ideal(ring: FinRing) -> Ideal:
    return Ideal(ring, singular_mask(regular_module(ring.opposite())), "left")


def nonsingular_flag(module: FinModule) -> Flag:
    z = singular_mask(module)
    if z == module.zero_mask:
        return Flag.true()
    first = int(indices_from_mask(z & ~module.zero_mask, module.order)[0])
    return Flag.false(first, note="element with essential annihilator")


# ring-level classes --------------------------------------------------------

def _least(bad: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def vn_regular_flag(ring: FinRing) -> Flag:
    for a in ring.elements():
        if not (ring.mul[ring.mul[a], a] == a).any():
            return Flag.false(a, note="no x with a = axa")
    return Flag.true()


def unit_regular_oracles(ring: FinRing) -> np.ndarray:
    """Elementwise unit-regularity by a = aua, a = ev and a = v'e'; they must agree"""
    c = classify_elements(ring)
    n = ring.order
    units, idempotents = c.units, c.idempotents
    index = np.arange(n)
    sandwich = (ring.mul[ring.mul[:, units], index[:, None]] == index[:, None]).any(axis=1)
    left = np.zeros(n, dtype=bool)
    left[ring.mul[np.ix_(idempotents, units)].ravel()] = True
    right = np.zeros(n, dtype=bool)
    right[ring.mul[np.ix_(units, idempotents)].ravel()] = True
    disagree = _least((sandwich != left) | (sandwich != right))
    if disagree is not None:
        raise InvariantViolation(
            f"{ring.label}: unit-regularity oracles disagree at element {disagree} "
            f"(aua={bool(sandwich[disagree])}, ev={bool(left[disagree])}, v'e'={bool(right[disagree])})"
        )
    return sandwich


def unit_regular_flag(ring: FinRing) -> Flag:
    witness = _least(~unit_regular_oracles(ring))
    if witness is None:
        return Flag.true()
    return Flag.false(witness, note="no unit u with a = aua")


def rickart_flag(ring: FinRing, generators: Optional[np.ndarray] = None, kind: str = "an idempotent") -> Flag:
    """Every ann_r(a) is eR for an idempotent e, or for one of ``generators`` (of ``kind``) when given"""
    masks = principal_masks(ring)
    candidates = classify_elements(ring).idempotents if generators is None else generators
    generated = {masks[int(e)] for e in candidates}
    for a, ann in enumerate(annihilator_masks(ring)):
        if ann not in generated:
            return Flag.false(a, note=f"ann_r(a) is not generated by {kind}")
    return Flag.true()


def reduced_flag(ring: FinRing) -> Flag:
    index = np.arange(ring.order)
    witness = _least((ring.mul[index, index] == ring.zero) & (index != ring.zero))
    if witness is None:
        return Flag.true()
    return Flag.false(witness, note="nonzero a with a^2 = 0")


def proper_involution_flag(ring: FinRing) -> Flag:
    if ring.star is None:
        return Flag.skipped("no involution")
    index = np.arange(ring.order)
    witness = _least((ring.mul[ring.star, index] == ring.zero) & (index != ring.zero))
    if witness is None:
        return Flag.true()
    return Flag.false(witness, note="nonzero a with a*a = 0")


def morphic_flag(ring: FinRing, limit: int) -> Flag:
    """ann_r(x) isomorphic to R/xR for every x, via quotient modules and the isomorphism search"""
    module = regular_module(ring)
    masks = principal_masks(ring)
    annihilators = annihilator_masks(ring)
    verdicts: Dict[Tuple[int, int], bool] = {}
    for x in ring.elements():
        key = (masks[x], annihilators[x])
        if key not in verdicts:
            principal, ann = key
            if popcount(principal) * popcount(ann) != ring.order:
                verdicts[key] = False
            else:
                quotient = quotient_module(module, principal, f"{ring.label}/{x}R")
                iso = find_isomorphism(Submodule.whole(quotient), Submodule(module, ann), limit)
                verdicts[key] = iso is not None
        if not verdicts[key]:
            return Flag.false(x, note="ann_r(x) is not isomorphic to R/xR")
    return Flag.true()


def _guarded(what: str, compute: Callable[[], Dict[str, Flag]], names: Sequence[str]) -> Dict[str, Flag]:
    try:
        return compute()
    except BudgetExceeded as e:
        logger.warning("budget exhausted, flags skipped", what=what, error=str(e))
        record_budget_skip(what)
        return {name: Flag.skipped(str(e)) for name in names}


def ring_class(ring: FinRing, budgets: Optional[Budgets] = None) -> RingClassReport:
    budgets = budgets or Budgets.from_settings()

    def compute() -> RingClassReport:
        with record_stage("ring_class", label=ring.label, order=ring.order):
            vn = vn_regular_flag(ring)
            flags: Dict[str, Flag] = {
                "vn_regular": vn,
                "unit_regular": unit_regular_flag(ring),
                "rickart_right": rickart_flag(ring),
                "rickart_left": rickart_flag(ring.opposite()),
                "right_nonsingular": nonsingular_flag(regular_module(ring)),
                "left_nonsingular": nonsingular_flag(regular_module(ring.opposite())),
                "reduced": reduced_flag(ring),
            }
            flags.update(
                _guarded(
                    "right ideal lattice",
                    lambda: cs_conditions(ring, budgets),
                    ["C1", "C2", "C3", "CS", "quasi_continuous", "continuous"],
                )
            )
            flags.update(_guarded("morphic", lambda: {"morphic_right": morphic_flag(ring, budgets.max_assignments)}, ["morphic_right"]))
            flags.update(
                _guarded(
                    "morphic",
                    lambda: {"morphic_left": morphic_flag(ring.opposite(), budgets.max_assignments)},
                    ["morphic_left"],
                )
            )
            if ring.has_involution:
                flags["star_regular"] = conjunction(vn, proper_involution_flag(ring))
                flags["rickart_star"] = rickart_flag(ring, classify_elements(ring).projections, "a projection")
            flags.pop("C1")
            lattice_size = _lattice_size(ring, budgets)
            report = RingClassReport(
                **flags,
                singular_ideal=singular_ideal(ring).as_list(),
                left_singular_ideal=left_singular_ideal(ring).as_list(),
                right_ideal_count=lattice_size,
                summand_count=len(summands(ring)),
            )
        check_ring_class(ring, report)
        return report

    key = f"ring_class:{budgets.max_ideals}:{budgets.max_assignments}"
    return ring.cached(key, compute)


def _lattice_size(ring: FinRing, budgets: Budgets) -> Optional[int]:
    try:
        return len(right_ideals(ring, budgets))
    except BudgetExceeded:
        return None


def check_ring_class(ring: FinRing, report: RingClassReport) -> None:
    implications = [
        ("continuous", "quasi_continuous"),
        ("quasi_continuous", "CS"),
        ("C2", "C3"),
        ("unit_regular", "vn_regular"),
        ("star_regular", "vn_regular"),
    ]
    for premise, conclusion in implications:
        if getattr(report, premise).holds and getattr(report, conclusion).holds is False:
            raise InvariantViolation(f"{ring.label}: {premise} holds but {conclusion} does not")


def lattice_report(ring: FinRing, budgets: Budgets, side: str = "right") -> LatticeReport:
    """Every one-sided ideal with its summand and essentiality flags"""
    target = ring if side == "right" else ring.opposite()
    module = regular_module(target)
    lattice = right_ideals(target, budgets)
    generators = summand_map(target)
    summand_masks = {s.mask for s in summands(target)}
    whole = Ideal(ring, module.full_mask, side)
    entries = [
        IdealEntry(
            elements=lattice.elements(mask),
            summand=mask in summand_masks,
            essential=is_essential(Ideal(ring, mask, side), whole),
            idempotents=generators.get(mask, []),
        )
        for mask in lattice
    ]
    conditions = cs_conditions(target, budgets)
    return LatticeReport(
        name=ring.label,
        order=ring.order,
        side=side,
        ideals=entries,
        CS=conditions["CS"],
        C2=conditions["C2"],
        C3=conditions["C3"],
        singular_ideal=[int(i) for i in indices_from_mask(singular_mask(module), ring.order)],
    )
