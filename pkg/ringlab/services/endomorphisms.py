"""
Endomorphism rings of finite modules and the module-level classification
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ringlab.config import Budgets
from ringlab.core.bitsets import indices_from_mask
from ringlab.core.rings import FinRing, RingTables, validate_ring
from ringlab.errors import BudgetExceeded, InvariantViolation, NoDecomposition, SizeBudgetExceeded
from ringlab.models import CsLevelReport, EndoDecomposition, Flag, ModuleReport
from ringlab.services.decomp import classify_cleanness
from ringlab.services.elements import classify_elements
from ringlab.services.homs import HomSearch, ModuleHom, Submodule
from ringlab.services.lattice import (
    condition_c1,
    condition_c2,
    condition_c3,
    derived_conditions,
    is_essential_in,
    module_isomorphic_summand,
    module_summands,
    nonsingular_flag,
    singular_mask,
    submodules,
)
from ringlab.services.modules import FinModule, free_module, regular_module
from ringlab.utils.logging_config import get_logger
from ringlab.utils.metrics import record_budget_skip, record_stage

logger = get_logger(__name__)

ISOMORPHISM = "isomorphism"
ESSENTIAL_MONOMORPHISM = "essential_monomorphism"
MONOMORPHISM = "monomorphism"


@dataclass(frozen=True, eq=False)
class EndRing:
    """End(M) as a FinRing; element i is the endomorphism with value table ``tables[i]``.

    Endomorphisms are sorted lexicographically by value table and multiply by
    composition, (f.g)(x) = f(g(x)).
    """

    module: FinModule
    ring: FinRing
    tables: np.ndarray
    index: Dict[bytes, int]

    @property
    def order(self) -> int:
        return self.ring.order

    def hom(self, i: int) -> np.ndarray:
        return self.tables[i]

    def index_of(self, values: np.ndarray) -> int:
        return self.index[np.ascontiguousarray(values, dtype=np.int64).tobytes()]

    def identity(self) -> int:
        return self.ring.one


def endomorphism_ring(module: FinModule, budgets: Optional[Budgets] = None) -> EndRing:
    """All endomorphisms by backtracking over generator images, as a validated ring"""
    budgets = budgets or Budgets.from_settings()

    def compute() -> EndRing:
        whole = Submodule.whole(module)
        with record_stage("endomorphisms", label=module.label, order=module.order):
            homs = [h.values for h in HomSearch(whole, whole, budgets.max_assignments)]
        tables = np.array(sorted(homs, key=lambda v: tuple(v.tolist())), dtype=np.int64)
        index = {row.tobytes(): i for i, row in enumerate(tables)}
        k = len(tables)
        add = np.empty((k, k), dtype=np.int64)
        mul = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            sums = module.add[tables[i][None, :], tables]
            products = tables[i][tables]
            for j in range(k):
                add[i, j] = index[sums[j].tobytes()]
                mul[i, j] = index[products[j].tobytes()]
        ring = validate_ring(RingTables(add=add, mul=mul, label=f"End({module.label})"))
        logger.info("endomorphism ring built", label=module.label, order=k)
        return EndRing(module=module, ring=ring, tables=tables, index=index)

    return module.cached(f"end:{budgets.max_assignments}", compute)


def left_multiplication_map(ring: FinRing, budgets: Optional[Budgets] = None) -> np.ndarray:
    """a -> index of L_a in End(R_R), checked to be a ring isomorphism table by table"""
    end = endomorphism_ring(regular_module(ring), budgets)
    phi = np.array([end.index_of(ring.mul[a]) for a in ring.elements()], dtype=np.int64)
    if np.unique(phi).size != ring.order or end.order != ring.order:
        raise InvariantViolation(f"{ring.label}: a -> L_a is not a bijection onto End(R_R)")
    if not np.array_equal(phi[ring.add], end.ring.add[np.ix_(phi, phi)]):
        raise InvariantViolation(f"{ring.label}: a -> L_a is not additive")
    if not np.array_equal(phi[ring.mul], end.ring.mul[np.ix_(phi, phi)]):
        raise InvariantViolation(f"{ring.label}: a -> L_a is not multiplicative")
    return phi


def _hom(end: EndRing, i: int) -> ModuleHom:
    whole = Submodule.whole(end.module)
    return ModuleHom(whole, whole, end.hom(i))


def is_monomorphism(end: EndRing, f: int) -> bool:
    values = end.hom(f)
    return np.unique(values).size == end.module.order


def is_essential_mono(end: EndRing, f: int) -> bool:
    """Injective with essential image"""
    if not is_monomorphism(end, f):
        return False
    module = end.module
    return is_essential_in(module, _hom(end, f).image_mask(), module.full_mask)


def _kind(end: EndRing, u: int) -> Optional[str]:
    if not is_monomorphism(end, u):
        return None
    if bool(classify_elements(end.ring).unit[u]):
        return ISOMORPHISM
    return ESSENTIAL_MONOMORPHISM if is_essential_mono(end, u) else MONOMORPHISM


RANK = {ISOMORPHISM: 3, ESSENTIAL_MONOMORPHISM: 2, MONOMORPHISM: 1}


def endo_decompose(end: EndRing, f: int) -> Tuple[int, int, str]:
    """f = e + u, e idempotent, u of the strongest achievable kind; least e among those"""
    best: Optional[Tuple[int, int, str]] = None
    for e in classify_elements(end.ring).idempotents:
        u = end.ring.minus(f, int(e))
        kind = _kind(end, u)
        if kind is not None and (best is None or RANK[kind] > RANK[best[2]]):
            best = (int(e), u, kind)
    if best is None:
        raise NoDecomposition(f"{end.ring.label}: endomorphism {f} is not an idempotent plus a monomorphism")
    return best


def endo_decomposition_model(end: EndRing, f: int) -> EndoDecomposition:
    e, u, kind = endo_decompose(end, f)
    return EndoDecomposition(
        endomorphism=end.hom(f).tolist(),
        idempotent=end.hom(e).tolist(),
        complement=end.hom(u).tolist(),
        kind=kind,
    )


def condition_c_flag(end: EndRing) -> Flag:
    """Every essential monomorphism in End(M) is an isomorphism"""
    for f in end.ring.elements():
        if _kind(end, f) == ESSENTIAL_MONOMORPHISM:
            return Flag.false(f, note="essential monomorphism that is not onto")
    return Flag.true()


def _skipped(names: List[str], error: Exception, what: str) -> Dict[str, Flag]:
    logger.warning("budget exhausted, module flags skipped", what=what, error=str(error))
    record_budget_skip(what)
    return {name: Flag.skipped(str(error)) for name in names}


def module_class(module: FinModule, budgets: Optional[Budgets] = None) -> ModuleReport:
    """C-conditions over the submodule lattice, nonsingularity, and cleanness of End(M)"""
    budgets = budgets or Budgets.from_settings()
    notes: List[str] = []
    lattice_size: Optional[int] = None
    try:
        lattice = submodules(module, budgets.max_ideals)
        lattice_size = len(lattice)
        summand_masks = list(module_summands(lattice))
        c1 = condition_c1(lattice, summand_masks)
        c2 = condition_c2(lattice, summand_masks, module_isomorphic_summand(lattice, summand_masks, budgets.max_assignments))
        c3 = condition_c3(lattice, summand_masks)
        conditions = derived_conditions(c1, c2, c3)
    except BudgetExceeded as e:
        conditions = _skipped(["C1", "C2", "C3", "CS", "quasi_continuous", "continuous"], e, "submodule lattice")
        notes.append(str(e))

    end_order: Optional[int] = None
    try:
        end = endomorphism_ring(module, budgets)
        end_order = end.order
        cleanness = classify_cleanness(end.ring)
        extra = {"clean": cleanness.clean, "almost_clean": cleanness.almost_clean, "condition_c": condition_c_flag(end)}
    except BudgetExceeded as e:
        extra = _skipped(["clean", "almost_clean", "condition_c"], e, "endomorphism ring")
        notes.append(str(e))

    report = ModuleReport(
        name=module.label,
        ring=module.ring.label,
        order=module.order,
        submodule_count=lattice_size,
        endomorphism_ring_order=end_order,
        nonsingular=nonsingular_flag(module),
        singular_submodule=[int(i) for i in indices_from_mask(singular_mask(module), module.order)],
        notes=notes,
        **conditions,
        **extra,
    )
    if report.C2.holds and report.C3.holds is False:
        raise InvariantViolation(f"{module.label}: C2 holds but C3 does not")
    return report


def summands_from_idempotents(end: EndRing) -> List[int]:
    """Images of idempotent endomorphisms; the summands of M"""
    images = {_hom(end, int(e)).image_mask() for e in classify_elements(end.ring).idempotents}
    return sorted(images)


def cs_level(ring: FinRing, kmax: int, budgets: Optional[Budgets] = None) -> CsLevelReport:
    """CS flag of R^k for k = 1..kmax; BudgetExceeded names the first infeasible k"""
    budgets = budgets or Budgets.from_settings()
    flags: Dict[int, bool] = {}
    for k in range(1, kmax + 1):
        try:
            module = free_module(ring, k, budgets)
            lattice = submodules(module, budgets.max_ideals)
        except (BudgetExceeded, SizeBudgetExceeded) as e:
            raise BudgetExceeded(e.what, e.limit, f"first infeasible rank k={k}")
        flags[k] = bool(condition_c1(lattice, list(module_summands(lattice))).holds)
    level = max((k for k, holds in flags.items() if holds), default=0)
    return CsLevelReport(ring=ring.label, kmax=kmax, level=level, flags=flags)
