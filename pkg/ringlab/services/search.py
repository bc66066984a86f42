"""
Counterexample search: enumerate or sample ring specs, classify, keep those satisfying a predicate
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from ringlab.config import Budgets
from ringlab.core import spec_tree as st
from ringlab.core.constructors import construct
from ringlab.core.dsl import format_expr
from ringlab.errors import BudgetExceeded, SizeBudgetExceeded
from ringlab.models import Finding, SearchReport
from ringlab.services.predicates import Predicate, parse_predicate
from ringlab.services.profiles import profile_ring
from ringlab.storage.findings_store import FindingsStore, describe
from ringlab.utils.logging_config import get_logger
from ringlab.utils.metrics import SEARCH_FINDINGS, record_budget_skip, record_stage

logger = get_logger(__name__)

CONSTRUCTORS = ("zmod", "gf", "matrix", "uppertri", "product", "opposite")
SKIPPED, REJECTED, FOUND = "skipped", "rejected", "found"


@dataclass(frozen=True)
class GeneratorConfig:
    """Which specs a search visits"""

    max_order: int = 16
    constructors: Sequence[str] = CONSTRUCTORS
    depth: int = 1
    involutions: bool = False
    samples: Optional[int] = None
    seed: int = 0
    limit: Optional[int] = None


def _order(expr: st.RingExpr) -> int:
    if isinstance(expr, st.ZMod):
        return expr.n
    if isinstance(expr, st.GF):
        return expr.p ** expr.k
    if isinstance(expr, st.Matrix):
        return _order(expr.base) ** (expr.k * expr.k)
    if isinstance(expr, st.UpperTri):
        return _order(expr.base) ** (expr.k * (expr.k + 1) // 2)
    if isinstance(expr, st.Product):
        return _order(expr.left) * _order(expr.right)
    if isinstance(expr, st.Opposite):
        return _order(expr.base)
    raise TypeError(f"search does not generate {expr!r}")


def _commutative(expr: st.RingExpr) -> bool:
    if isinstance(expr, (st.ZMod, st.GF)):
        return True
    if isinstance(expr, st.Product):
        return _commutative(expr.left) and _commutative(expr.right)
    if isinstance(expr, st.Opposite):
        return _commutative(expr.base)
    return False


def _atoms(config: GeneratorConfig) -> List[st.RingExpr]:
    atoms: List[st.RingExpr] = []
    if "zmod" in config.constructors:
        # zmod(p) duplicates gf(p)
        atoms += [st.ZMod(n) for n in range(2, config.max_order + 1) if not ("gf" in config.constructors and isprime(n))]
    if "gf" in config.constructors:
        for p in range(2, config.max_order + 1):
            if not isprime(p):
                continue
            k = 1
            while p ** k <= config.max_order:
                atoms.append(st.GF(p, k))
                k += 1
    return atoms


def _grow(pool: List[st.RingExpr], config: GeneratorConfig) -> List[st.RingExpr]:
    bound = config.max_order
    grown: List[st.RingExpr] = []
    for base in pool:
        n = _order(base)
        if "matrix" in config.constructors and n ** 4 <= bound:
            grown.append(st.Matrix(base, 2))
        if "uppertri" in config.constructors and n ** 3 <= bound:
            grown.append(st.UpperTri(base, 2))
        if "opposite" in config.constructors and isinstance(base, st.UpperTri):
            grown.append(st.Opposite(base))
    if "product" in config.constructors:
        for i, left in enumerate(pool):
            for right in pool[i:]:
                if _order(left) * _order(right) <= bound:
                    grown.append(st.Product(left, right))
    return grown


def candidate_exprs(config: GeneratorConfig) -> List[st.RingExpr]:
    """Every expression up to ``depth`` constructor applications, by order then text"""
    atoms = _atoms(config)
    pool = list(atoms)
    for _ in range(config.depth):
        frontier = [e for e in _grow(pool, config) if e not in pool]
        pool += frontier
        if not frontier:
            break
    unique = {format_expr(e): e for e in pool}
    return sorted(unique.values(), key=lambda e: (_order(e), format_expr(e)))


def _with_involutions(exprs: Sequence[st.RingExpr]) -> Iterator[st.RingSpec]:
    for expr in exprs:
        name = format_expr(expr)
        yield st.RingSpec(name=name, expr=expr)
        if _commutative(expr):
            yield st.RingSpec(name=name, expr=expr, involution=st.Involution("identity"))
        if isinstance(expr, (st.Matrix, st.UpperTri)) and _commutative(expr.base):
            yield st.RingSpec(name=name, expr=expr, involution=st.Involution("transpose"))
        if isinstance(expr, st.Product) and expr.left == expr.right:
            yield st.RingSpec(name=name, expr=expr, involution=st.Involution("swap"))


def candidate_specs(config: GeneratorConfig) -> List[st.RingSpec]:
    exprs = candidate_exprs(config)
    if config.involutions:
        specs = list(_with_involutions(exprs))
    else:
        specs = [st.RingSpec(name=format_expr(e), expr=e) for e in exprs]
    if config.samples is not None and config.samples < len(specs):
        rng = np.random.default_rng(config.seed)
        chosen = np.sort(rng.choice(len(specs), size=config.samples, replace=False))
        specs = [specs[int(i)] for i in chosen]
    return specs


def search_counterexamples(
    predicate_text: str,
    config: Optional[GeneratorConfig] = None,
    budgets: Optional[Budgets] = None,
    store: Optional[FindingsStore] = None,
) -> SearchReport:
    """Classify every candidate and keep those the predicate accepts.

    Instances whose flags leave the predicate undecided, or that exceed a
    budget, are counted as skipped. Reaching ``config.limit`` examined
    instances stops the search and marks the report partial.
    """
    config = config or GeneratorConfig()
    budgets = budgets or Budgets.from_settings()
    predicate = parse_predicate(predicate_text)
    specs = candidate_specs(config)
    findings: List[Finding] = []
    examined = skipped = 0
    partial = False
    with record_stage("search", predicate=predicate_text, candidates=len(specs)):
        for spec in specs:
            if config.limit is not None and examined >= config.limit:
                partial = True
                break
            examined += 1
            status, finding = _examine(spec, predicate, budgets, store)
            if status == SKIPPED:
                skipped += 1
            elif finding is not None:
                findings.append(finding)
    logger.info(
        "search finished",
        predicate=predicate_text,
        examined=examined,
        skipped=skipped,
        findings=len(findings),
        partial=partial,
    )
    return SearchReport(predicate=predicate_text, examined=examined, skipped=skipped, partial=partial, findings=findings)


def _examine(
    spec: st.RingSpec, predicate: Predicate, budgets: Budgets, store: Optional[FindingsStore]
) -> Tuple[str, Optional[Finding]]:
    try:
        ring = construct(spec, budgets=budgets)
        profile = profile_ring(spec.name, ring, budgets)
    except (BudgetExceeded, SizeBudgetExceeded) as e:
        logger.warning("search candidate skipped", label=spec.name, error=str(e))
        record_budget_skip("search candidate")
        return SKIPPED, None
    flags = profile.flags()
    verdict = predicate.evaluate(flags)
    if verdict is None:
        return SKIPPED, None
    if not verdict:
        return REJECTED, None
    SEARCH_FINDINGS.inc()
    label = describe(spec)
    logger.info("search finding", label=label, order=ring.order)
    path = store.save(spec, profile.report(), predicate.text) if store is not None else None
    return FOUND, Finding(spec=label, fingerprint=profile.fingerprint, flags=flags, path=str(path) if path else None)


def reverify(store: FindingsStore, budgets: Optional[Budgets] = None) -> List[str]:
    """Reload and reclassify every stored finding; returns the paths that no longer satisfy their predicate"""
    budgets = budgets or Budgets.from_settings()
    failures = []
    for path in store.paths():
        spec, predicate_text = store.load(path)
        if predicate_text is None:
            continue
        profile = profile_ring(spec.name, construct(spec, base_dir=path.parent, budgets=budgets), budgets)
        if parse_predicate(predicate_text).evaluate(profile.flags()) is not True:
            logger.error("finding no longer satisfies its predicate", path=str(path), predicate=predicate_text)
            failures.append(str(path))
    return failures
