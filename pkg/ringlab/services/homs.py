"""
Module homomorphisms between submodules of finite modules

A homomorphism is fixed by the images of a generating set. The search
assigns generator images one at a time; after each assignment the map is
extended to the submodule generated so far and rejected at the first
inconsistency, so only well-defined partial maps are ever extended.
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ringlab.core.bitsets import coset_union, indices_from_mask, popcount
from ringlab.core.fingerprint import additive_orders
from ringlab.errors import BudgetExceeded, InvariantViolation
from ringlab.services.modules import FinModule
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Submodule:
    """The submodule of ``module`` whose elements are the bits of ``mask``"""

    module: FinModule
    mask: int

    @classmethod
    def whole(cls, module: FinModule) -> "Submodule":
        return cls(module, module.full_mask)

    @property
    def elements(self) -> np.ndarray:
        return indices_from_mask(self.mask, self.module.order)

    @property
    def order(self) -> int:
        return popcount(self.mask)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """A homomorphism given by its value table on the source elements; -1 elsewhere"""

    source: Submodule
    target: Submodule
    values: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def image_mask(self) -> int:
        image = np.unique(self.values[self.source.elements])
        return sum(1 << int(y) for y in image)

    def kernel_mask(self) -> int:
        zero = self.target.module.zero
        return sum(1 << int(x) for x in self.source.elements if self.values[x] == zero)

    def is_injective(self) -> bool:
        return self.kernel_mask() == self.source.module.zero_mask


def generating_set(sub: Submodule) -> List[int]:
    """Greedy generators: repeatedly take the element whose cyclic submodule adds the most"""

    def compute() -> List[int]:
        module = sub.module
        cyclic = module.cyclic_masks()
        span = module.zero_mask
        generators: List[int] = []
        while span != sub.mask:
            best, best_mask = -1, span
            span_elements = indices_from_mask(span, module.order)
            for x in indices_from_mask(sub.mask & ~span, module.order):
                # cheap bound: the new span has at most |span| * |xR| elements
                if popcount(span) * popcount(cyclic[int(x)]) <= popcount(best_mask):
                    continue
                grown = coset_union(module.add, span_elements, span, indices_from_mask(cyclic[int(x)], module.order), module.order)
                if popcount(grown) > popcount(best_mask):
                    best, best_mask = int(x), grown
            if best < 0:
                raise InvariantViolation(f"{module.label}: mask is not a submodule")
            generators.append(best)
            span = best_mask
        return generators

    return sub.module.cached(f"generators:{sub.mask}", compute)


def _annihilator(module: FinModule, x: int) -> np.ndarray:
    return np.flatnonzero(module.action[x] == module.zero)


def _extend(
    source: FinModule,
    target: FinModule,
    span: np.ndarray,
    images: np.ndarray,
    g: int,
    y: int,
) -> Optional[np.ndarray]:
    """Extend a hom known on ``span`` by g -> y; None when that is not well defined"""
    keys = source.add[span[:, None], source.action[g][None, :]]
    vals = target.add[images[span][:, None], target.action[y][None, :]]
    extended = images.copy()
    extended[keys.ravel()] = vals.ravel()
    if not np.array_equal(extended[keys], vals):
        return None
    return extended


class HomSearch:
    """Backtracking enumeration of homomorphisms source -> target"""

    def __init__(self, source: Submodule, target: Submodule, limit: int, injective: bool = False):
        if source.module.ring is not target.module.ring:
            raise ValueError("homomorphisms need modules over the same ring")
        self.source = source
        self.target = target
        self.limit = limit
        self.injective = injective
        self.assignments = 0
        self.generators = generating_set(source)
        target_elements = target.elements
        zero = target.module.zero
        # candidate images of each generator: y with ann(g) contained in ann(y)
        self.candidates = []
        for g in self.generators:
            ann = _annihilator(source.module, g)
            killed = (target.module.action[np.ix_(target_elements, ann)] == zero).all(axis=1)
            candidates = target_elements[killed]
            if injective:
                same = [len(_annihilator(target.module, int(y))) == len(ann) for y in candidates]
                candidates = candidates[np.asarray(same, dtype=bool)] if len(candidates) else candidates
            self.candidates.append(candidates)

    def _tick(self) -> None:
        self.assignments += 1
        if self.assignments > self.limit:
            raise BudgetExceeded("hom search assignments", self.limit, f"{self.source.module.label} -> {self.target.module.label}")

    def __iter__(self) -> Iterator[ModuleHom]:
        source, target = self.source.module, self.target.module
        images = np.full(source.order, -1, dtype=np.int64)
        images[source.zero] = target.zero
        span = np.array([source.zero], dtype=np.int64)
        yield from self._search(0, span, images)

    def _search(self, depth: int, span: np.ndarray, images: np.ndarray) -> Iterator[ModuleHom]:
        source, target = self.source.module, self.target.module
        if depth == len(self.generators):
            hom = ModuleHom(self.source, self.target, images)
            if not self.injective or hom.is_injective():
                yield hom
            return
        g = self.generators[depth]
        used = images[span]
        for y in self.candidates[depth]:
            self._tick()
            if self.injective and depth > 0 and np.any(used == y):
                continue
            extended = _extend(source, target, span, images, g, int(y))
            if extended is None:
                continue
            if self.injective and np.unique(extended[extended >= 0]).size != np.count_nonzero(extended >= 0):
                continue
            yield from self._search(depth + 1, np.flatnonzero(extended >= 0), extended)


def invariant_profile(sub: Submodule) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Sorted additive orders and annihilator sizes; equal for isomorphic submodules"""
    module = sub.module
    elements = sub.elements
    orders = module.cached("additive_orders", lambda: additive_orders(module.add, module.zero))[elements]
    ann_sizes = (module.action[elements] == module.zero).sum(axis=1)
    return tuple(sorted(int(v) for v in orders)), tuple(sorted(int(v) for v in ann_sizes))


def find_isomorphism(source: Submodule, target: Submodule, limit: int) -> Optional[ModuleHom]:
    """An isomorphism source -> target, or None; BudgetExceeded rather than a silent None"""
    if source.order != target.order:
        return None
    if invariant_profile(source) != invariant_profile(target):
        return None
    for hom in HomSearch(source, target, limit, injective=True):
        return hom
    return None


def nonzero_hom(source: Submodule, target: Submodule, limit: int) -> Optional[ModuleHom]:
    """A nonzero hom source -> target if one exists"""
    zero = target.module.zero
    for hom in HomSearch(source, target, limit):
        if np.any(hom.values[source.elements] != zero):
            return hom
    return None
