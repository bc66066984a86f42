"""
Per-instance classification bundles shared by classify, verify and search
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

from ringlab.config import Budgets, settings
from ringlab.core.fingerprint import Fingerprint, fingerprint
from ringlab.core.rings import FinRing
from ringlab.models import CleannessReport, ElementReport, Flag, ModuleReport, RingClassReport, RingReport
from ringlab.services.decomp import classify_cleanness
from ringlab.services.elements import element_report, finite_regular_collapse
from ringlab.services.endomorphisms import module_class
from ringlab.services.lattice import ring_class
from ringlab.services.modules import FinModule
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class RingProfile:
    """Everything known about one ring instance"""

    name: str
    ring: FinRing
    elements: ElementReport
    cleanness: CleannessReport
    ring_class: RingClassReport
    fingerprint: Fingerprint
    millis: float
    notes: List[str] = field(default_factory=list)

    def flags(self) -> Dict[str, Optional[bool]]:
        """Every boolean flag by name; None when not computed for this instance"""
        result: Dict[str, Optional[bool]] = {
            "abelian": self.elements.abelian.holds,
            "commutative": self.ring.is_commutative(),
            "star": self.ring.has_involution,
            "finite_regular_units": finite_regular_collapse(self.ring) is None,
        }
        for report in (self.cleanness, self.ring_class):
            for name, value in report:
                if isinstance(value, Flag):
                    result[name] = value.holds
        return result

    def flag(self, name: str) -> Optional[Flag]:
        if name == "abelian":
            return self.elements.abelian
        for report in (self.cleanness, self.ring_class):
            value = getattr(report, name, None)
            if isinstance(value, Flag):
                return value
        return None

    def report(self) -> RingReport:
        return RingReport(
            name=self.name,
            order=self.ring.order,
            involution=self.ring.has_involution,
            fingerprint=self.fingerprint,
            elements=self.elements,
            cleanness=self.cleanness,
            ring_class=self.ring_class,
            notes=self.notes,
        )


@dataclass
class ModuleProfile:
    name: str
    module: FinModule
    report: ModuleReport
    millis: float

    def flags(self) -> Dict[str, Optional[bool]]:
        return {name: value.holds for name, value in self.report if isinstance(value, Flag)}

    def flag(self, name: str) -> Optional[Flag]:
        value = getattr(self.report, name, None)
        return value if isinstance(value, Flag) else None


def profile_ring(name: str, ring: FinRing, budgets: Optional[Budgets] = None) -> RingProfile:
    budgets = budgets or Budgets.from_settings()
    start_time = time.perf_counter()
    elements = element_report(ring)
    cleanness = classify_cleanness(ring)
    classes = ring_class(ring, budgets)
    notes = [f.note for _, f in classes if isinstance(f, Flag) and f.holds is None and f.note]
    millis = (time.perf_counter() - start_time) * 1000
    logger.info("ring classified", label=name, order=ring.order, millis=round(millis, 3))
    return RingProfile(
        name=name,
        ring=ring,
        elements=elements,
        cleanness=cleanness,
        ring_class=classes,
        fingerprint=fingerprint(ring),
        millis=millis,
        notes=sorted(set(notes)),
    )


def profile_module(name: str, module: FinModule, budgets: Optional[Budgets] = None) -> ModuleProfile:
    start_time = time.perf_counter()
    report = module_class(module, budgets)
    millis = (time.perf_counter() - start_time) * 1000
    logger.info("module classified", label=name, order=module.order, millis=round(millis, 3))
    return ModuleProfile(name=name, module=module, report=report, millis=millis)


def ordered_map(func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """Apply ``func`` over a thread pool; results come back in input order"""
    workers = workers or settings.workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
