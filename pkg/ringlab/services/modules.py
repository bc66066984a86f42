"""
Finite right modules over a FinRing

A module of order m over a ring of order n is an m x m addition table and an
m x n action table (x, r) -> x.r on the dense indices 0..m-1.
"""

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from ringlab.config import Budgets
from ringlab.core import spec_tree as st
from ringlab.core.bitsets import coset_union, indices_from_mask, mask_from_indices, row_masks
from ringlab.core.constructors import decode_entries
from ringlab.core.rawtables import read_module_tables
from ringlab.core.rings import FinRing
from ringlab.errors import ModuleValidationError, NotAGroup, SizeBudgetExceeded, TableShapeError, UnknownName
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FinModule:
    """An immutable finite right module over ``ring``"""

    ring: FinRing
    add: np.ndarray
    neg: np.ndarray
    zero: int
    action: np.ndarray
    label: str = ""
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    def elements(self) -> range:
        return range(self.order)

    def act(self, x: int, r: int) -> int:
        return int(self.action[x, r])

    def plus(self, x: int, y: int) -> int:
        return int(self.add[x, y])

    def minus(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    @property
    def zero_mask(self) -> int:
        return 1 << self.zero

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def cached(self, key: str, factory: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def cyclic_masks(self) -> List[int]:
        """Mask of xR for every element x"""
        return self.cached("cyclic", lambda: row_masks(self.action, self.order))

    def cyclic_membership(self) -> np.ndarray:
        """Boolean m x m array: [x, y] is True when y lies in xR"""

        def compute() -> np.ndarray:
            flags = np.zeros((self.order, self.order), dtype=bool)
            flags[np.arange(self.order)[:, None], self.action] = True
            return flags

        return self.cached("membership", compute)

    def annihilator_mask(self, x: int) -> int:
        """Mask (over the ring) of ann_R(x) = {r : x.r = 0}"""
        return mask_from_indices(np.flatnonzero(self.action[x] == self.zero), self.ring.order)

    def relabeled(self, label: str) -> "FinModule":
        return dataclasses.replace(self, label=label, _cache={})

    def __repr__(self) -> str:
        return f"FinModule({self.label!r}, order={self.order}, over={self.ring.label!r})"


def _first(mismatch: np.ndarray) -> tuple:
    return tuple(int(v) for v in np.argwhere(mismatch)[0])


def abelian_group(add: np.ndarray, what: str = "module") -> tuple:
    """(zero, neg) of an abelian group table, or NotAGroup"""
    m = add.shape[0]
    identity = np.arange(m)
    zeros = np.flatnonzero((add == identity).all(axis=1) & (add.T == identity).all(axis=1))
    if zeros.size == 0:
        raise NotAGroup(f"{what} addition has no identity")
    zero = int(zeros[0])
    if not np.array_equal(add, add.T):
        raise NotAGroup(f"{what} addition is not commutative", _first(add != add.T))
    for a in range(m):
        bad = add[add[a]] != add[a][add]
        if bad.any():
            b, c = _first(bad)
            raise NotAGroup(f"{what} addition is not associative", (a, b, c))
    hits = add == zero
    if not hits.any(axis=1).all():
        raise NotAGroup(f"{what} element without additive inverse", (int(np.flatnonzero(~hits.any(axis=1))[0]),))
    return zero, hits.argmax(axis=1)


def validate_module(ring: FinRing, add: Any, action: Any, label: str = "module") -> FinModule:
    """Check the abelian group and the four action axioms by full scans"""
    add = np.asarray(add, dtype=np.int64)
    action = np.asarray(action, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
        raise TableShapeError(f"module add table must be non-empty and square, got shape {add.shape}")
    m, n = add.shape[0], ring.order
    if action.shape != (m, n):
        raise TableShapeError(f"action table has shape {action.shape}, expected {(m, n)}")
    for name, table in (("add", add), ("action", action)):
        if table.min() < 0 or table.max() >= m:
            raise TableShapeError(f"module {name} table has entries outside 0..{m - 1}")
    zero, neg = abelian_group(add)

    if not np.array_equal(action[:, ring.one], np.arange(m)):
        raise ModuleValidationError("x.1 != x", (int(np.flatnonzero(action[:, ring.one] != np.arange(m))[0]),))
    for r in range(n):
        column = action[:, r]
        bad = column[add] != add[np.ix_(column, column)]
        if bad.any():
            x, y = _first(bad)
            raise ModuleValidationError("(x+y).r != x.r + y.r", (x, y, r))
    for x in range(m):
        row = action[x]
        bad = row[ring.add] != add[np.ix_(row, row)]
        if bad.any():
            r, s = _first(bad)
            raise ModuleValidationError("x.(r+s) != x.r + x.s", (x, r, s))
        bad = row[ring.mul] != action[row]
        if bad.any():
            r, s = _first(bad)
            raise ModuleValidationError("x.(rs) != (x.r).s", (x, r, s))

    for table in (add, neg, action):
        table.setflags(write=False)
    return FinModule(ring=ring, add=add, neg=neg, zero=zero, action=action, label=label)


def regular_module(ring: FinRing) -> FinModule:
    """R_R: the ring acting on itself by right multiplication"""

    def build() -> FinModule:
        return FinModule(
            ring=ring,
            add=ring.add,
            neg=ring.neg,
            zero=ring.zero,
            action=ring.mul,
            label=f"{ring.label}_R",
        )

    return ring.cached("regular_module", build)


def _check_order(label: str, order: int, budgets: Budgets) -> None:
    if order > budgets.max_module_order:
        raise SizeBudgetExceeded(label, order, budgets.max_module_order)


def free_module(ring: FinRing, k: int, budgets: Budgets) -> FinModule:
    """R^k, coordinates mixed-radix with the first most significant"""
    if k < 0:
        raise ValueError(f"free module rank must be >= 0, got {k}")
    n = ring.order
    order = n**k
    label = f"free({ring.label}, {k})"
    _check_order(label, order, budgets)
    if k == 0:
        add = np.zeros((1, 1), dtype=np.int64)
        action = np.zeros((1, n), dtype=np.int64)
        return validate_module(ring, add, action, label)
    coords = decode_entries(np.arange(order), n, k)
    add = np.zeros((order, order), dtype=np.int64)
    action = np.zeros((order, n), dtype=np.int64)
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for i in range(k):
        column = coords[:, i]
        add += ring.add[np.ix_(column, column)] * weights[i]
        action += ring.mul[column] * weights[i]
    return validate_module(ring, add, action, label)


def generated_submodule(module: FinModule, generators: Sequence[int]) -> int:
    """Mask of the submodule generated by ``generators``"""
    mask = module.zero_mask
    cyclic = module.cyclic_masks()
    for g in generators:
        if not 0 <= int(g) < module.order:
            raise ValueError(f"generator {g} is not an element of {module.label}")
        current = indices_from_mask(mask, module.order)
        mask = coset_union(module.add, current, mask, indices_from_mask(cyclic[int(g)], module.order), module.order)
    return mask


def quotient_module(module: FinModule, submodule_mask: int, label: Optional[str] = None) -> FinModule:
    """M/N via coset tables; each coset is indexed by the rank of its least element"""
    m = module.order
    members = indices_from_mask(submodule_mask, m)
    # coset of x is x + N; its least element is the representative
    cosets = module.add[np.arange(m)[:, None], members[None, :]]
    representative = cosets.min(axis=1)
    reps = np.unique(representative)
    rank = np.full(m, -1, dtype=np.int64)
    rank[reps] = np.arange(reps.size)
    coset_of = rank[representative]
    add = coset_of[module.add[np.ix_(reps, reps)]]
    action = coset_of[module.action[reps]]
    for table in (add, action):
        table.setflags(write=False)
    zero = int(coset_of[module.zero])
    neg = coset_of[module.neg[reps]]
    neg.setflags(write=False)
    return FinModule(
        ring=module.ring,
        add=add,
        neg=neg,
        zero=zero,
        action=action,
        label=label or f"{module.label}/N",
    )


def cyclic_module(ring: FinRing, generators: Sequence[int], budgets: Budgets) -> FinModule:
    """R/I for the right ideal I generated by ``generators``"""
    regular = regular_module(ring)
    ideal = generated_submodule(regular, generators)
    label = f"cyclic({ring.label}, {{{', '.join(str(int(i)) for i in indices_from_mask(ideal, ring.order))}}})"
    module = quotient_module(regular, ideal, label)
    _check_order(label, module.order, budgets)
    return module


def direct_sum(parts: Sequence[FinModule], budgets: Budgets) -> FinModule:
    """Componentwise sum, left-major indices"""
    if not parts:
        raise ValueError("direct sum of no modules")
    result = parts[0]
    for right in parts[1:]:
        if right.ring is not result.ring:
            raise ModuleValidationError("summands are modules over different rings")
        order = result.order * right.order
        label = f"sum({result.label}, {right.label})"
        _check_order(label, order, budgets)
        index = np.arange(order)
        a, b = index // right.order, index % right.order
        add = result.add[np.ix_(a, a)] * right.order + right.add[np.ix_(b, b)]
        action = result.action[a] * right.order + right.action[b]
        result = validate_module(result.ring, add, action, label)
    return result


def build_module(
    ring: FinRing,
    expr: st.ModuleExpr,
    env: Optional[Mapping[str, FinModule]] = None,
    base_dir: Optional[Union[str, Path]] = None,
    budgets: Optional[Budgets] = None,
) -> FinModule:
    budgets = budgets or Budgets.from_settings()
    env = env or {}
    if isinstance(expr, st.Free):
        return free_module(ring, expr.k, budgets)
    if isinstance(expr, st.Cyclic):
        return cyclic_module(ring, expr.generators, budgets)
    if isinstance(expr, st.DirectSum):
        return direct_sum([build_module(ring, p, env, base_dir, budgets) for p in expr.parts], budgets)
    if isinstance(expr, st.RawModule):
        path = Path(base_dir or ".") / expr.path
        add, action = read_module_tables(path)
        _check_order(expr.path, add.shape[0], budgets)
        return validate_module(ring, add, action, path.stem)
    if isinstance(expr, st.ModuleRef):
        if expr.name not in env:
            raise UnknownName(f"module {expr.name!r} is not defined")
        module = env[expr.name]
        if module.ring is not ring:
            raise ModuleValidationError(f"module {expr.name!r} is over {module.ring.label}, not {ring.label}")
        return module
    raise TypeError(f"not a module expression: {expr!r}")


def construct_module(
    spec: st.ModuleSpec,
    rings: Mapping[str, FinRing],
    env: Optional[Mapping[str, FinModule]] = None,
    base_dir: Optional[Union[str, Path]] = None,
    budgets: Optional[Budgets] = None,
) -> FinModule:
    if spec.ring not in rings:
        raise UnknownName(f"ring {spec.ring!r} is not defined")
    module = build_module(rings[spec.ring], spec.expr, env, base_dir, budgets).relabeled(spec.name)
    logger.info("module constructed", label=spec.name, ring=spec.ring, order=module.order)
    return module

