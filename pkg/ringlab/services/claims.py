"""
Executable claims about finite rings, rings with involution, modules and embeddings.

A claim is an implication evaluated per catalog instance. The hypothesis and
conclusion are predicates over report flags; claims that need more than flags
(witness re-verification, endomorphism scans, hom searches) add a check that
runs once the hypothesis is met.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ringlab.config import Budgets
from ringlab.errors import (
    BudgetExceeded,
    InvariantViolation,
    NoDecomposition,
    NotRickartAt,
    SizeBudgetExceeded,
    UnknownName,
)
from ringlab.models import ClaimReport, ClaimResult, DecompositionKind, Verdict, VerifyReport
from ringlab.services.catalog import Catalog
from ringlab.services.decomp import cs_witness, rickart_witness, satisfies
from ringlab.services.elements import classify_elements, finite_regular_collapse
from ringlab.services.embeddings import RingEmbedding, require_embedding
from ringlab.services.endomorphisms import (
    ESSENTIAL_MONOMORPHISM,
    ISOMORPHISM,
    endo_decompose,
    endomorphism_ring,
    left_multiplication_map,
    summands_from_idempotents,
)
from ringlab.services.homs import Submodule, nonzero_hom
from ringlab.services.lattice import module_summands, singular_mask, submodules, unit_regular_oracles
from ringlab.services.predicates import Predicate, parse_predicate
from ringlab.services.profiles import ModuleProfile, RingProfile, ordered_map, profile_module, profile_ring
from ringlab.utils.logging_config import get_logger
from ringlab.utils.metrics import record_budget_skip, record_verdict

logger = get_logger(__name__)


class Scope(str, Enum):
    RINGS = "rings"
    STAR_RINGS = "star-rings"
    MODULES = "modules"
    MODULE_PAIRS = "module-pairs"
    EMBEDDINGS = "embeddings"


@dataclass(frozen=True)
class Outcome:
    verdict: Verdict
    witness: Any = None
    note: Optional[str] = None


HOLDS = Outcome(Verdict.HOLDS)
NOT_MET = Outcome(Verdict.HYPOTHESIS_NOT_MET)


@dataclass(frozen=True)
class ModulePair:
    source: ModuleProfile
    target: ModuleProfile


@dataclass(frozen=True)
class EmbeddingInstance:
    name: str
    source: RingProfile
    target: RingProfile
    embedding: RingEmbedding


Instance = Union[RingProfile, ModuleProfile, ModulePair, EmbeddingInstance]
Check = Callable[[Any, Budgets], Outcome]


@dataclass(frozen=True)
class Claim:
    """hypothesis => conclusion on every instance in ``scope``"""

    id: str
    family: str
    statement: str
    scope: Scope
    hypothesis: Optional[str] = None
    conclusion: Optional[str] = None
    check: Optional[Check] = None
    exploratory: bool = False
    max_order: Optional[int] = None
    note: Optional[str] = None
    _parsed: Dict[str, Predicate] = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        modules = self.scope == Scope.MODULES
        for key in ("hypothesis", "conclusion"):
            text = getattr(self, key)
            if text is not None:
                self._parsed[key] = parse_predicate(text, modules=modules)

    def predicate(self, key: str) -> Optional[Predicate]:
        return self._parsed.get(key)


# checks -------------------------------------------------------------------

def _rickart_witnesses(profile: RingProfile, budgets: Budgets) -> Outcome:
    ring = profile.ring
    for a in ring.elements():
        try:
            d = rickart_witness(ring, a)
        except (NotRickartAt, InvariantViolation) as e:
            return Outcome(Verdict.VIOLATED, a, str(e))
        if not satisfies(d, DecompositionKind.SPECIAL_ALMOST_CLEAN):
            return Outcome(Verdict.VIOLATED, d.model_dump(), "witness is not special almost clean")
    return HOLDS


def _cs_witnesses(profile: RingProfile, budgets: Budgets) -> Outcome:
    ring = profile.ring
    nonsingular = profile.ring_class.right_nonsingular.holds
    for a in ring.elements():
        try:
            d = cs_witness(ring, a)
        except NoDecomposition as e:
            return Outcome(Verdict.VIOLATED, a, str(e))
        if nonsingular and not d.u_is_regular:
            return Outcome(Verdict.VIOLATED, d.model_dump(), "complement of a nonsingular CS ring is not regular")
    return HOLDS


def _finite_regular(profile: RingProfile, budgets: Budgets) -> Outcome:
    stray = finite_regular_collapse(profile.ring)
    if stray is not None:
        return Outcome(Verdict.VIOLATED, stray, "regular element that is not a unit")
    if profile.cleanness.clean.holds != profile.cleanness.almost_clean.holds:
        return Outcome(Verdict.VIOLATED, profile.cleanness.clean.witness, "clean and almost clean differ")
    return HOLDS


def _oracles(profile: RingProfile, budgets: Budgets) -> Outcome:
    try:
        unit_regular_oracles(profile.ring)
    except InvariantViolation as e:
        return Outcome(Verdict.VIOLATED, None, str(e))
    return HOLDS


def _idempotents_are_projections(profile: RingProfile, budgets: Budgets) -> Outcome:
    c = classify_elements(profile.ring)
    stray = np.flatnonzero(c.idempotent & ~c.projection)
    if stray.size:
        return Outcome(Verdict.VIOLATED, int(stray[0]), "idempotent that is not a projection")
    return HOLDS


def _regular_module_endomorphisms(profile: RingProfile, budgets: Budgets) -> Outcome:
    try:
        left_multiplication_map(profile.ring, budgets)
    except InvariantViolation as e:
        return Outcome(Verdict.VIOLATED, None, str(e))
    return HOLDS


def _endomorphism_decompositions(kinds: Tuple[str, ...]) -> Check:
    def check(profile: ModuleProfile, budgets: Budgets) -> Outcome:
        end = endomorphism_ring(profile.module, budgets)
        for f in end.ring.elements():
            try:
                _, _, kind = endo_decompose(end, f)
            except NoDecomposition as e:
                return Outcome(Verdict.VIOLATED, end.hom(f).tolist(), str(e))
            if kind not in kinds:
                return Outcome(Verdict.VIOLATED, end.hom(f).tolist(), f"best decomposition is only a {kind}")
        return HOLDS

    return check


def _summands_agree(profile: ModuleProfile, budgets: Budgets) -> Outcome:
    module = profile.module
    by_complement = set(module_summands(submodules(module, budgets.max_ideals)))
    by_idempotent = set(summands_from_idempotents(endomorphism_ring(module, budgets)))
    if by_complement != by_idempotent:
        stray = sorted(by_complement ^ by_idempotent)[0]
        return Outcome(Verdict.VIOLATED, stray, "summand found by only one method")
    return HOLDS


def _singular_homs(pair: ModulePair, budgets: Budgets) -> Outcome:
    source, target = pair.source.module, pair.target.module
    z = singular_mask(source)
    if pair.target.report.nonsingular.holds is not True or z == source.zero_mask:
        return NOT_MET
    hom = nonzero_hom(Submodule(source, z), Submodule.whole(target), budgets.max_assignments)
    if hom is not None:
        return Outcome(Verdict.VIOLATED, hom.values.tolist(), "nonzero map from the singular submodule")
    return HOLDS


def _embedding_check(
    kind: DecompositionKind,
    target_flag: str,
    source_flag: str,
    regular_source_flag: str,
) -> Check:
    """Q has ``target_flag`` and the same idempotents (projections) as R => R has ``source_flag``"""

    def check(instance: EmbeddingInstance, budgets: Budgets) -> Outcome:
        embedding = instance.embedding
        if kind.star and not (instance.source.ring.has_involution and instance.target.ring.has_involution):
            return NOT_MET
        holds = instance.target.flag(target_flag)
        if holds is None or holds.holds is None:
            return Outcome(Verdict.SKIPPED, note=f"{target_flag} not computed for the target")
        if kind.star:
            same = embedding.preserves_star() and embedding.same_projections()
        else:
            same = embedding.same_idempotents()
        if not (holds.holds and same):
            return NOT_MET
        source = instance.source.flag(source_flag)
        if source is None or not source.holds:
            return Outcome(Verdict.VIOLATED, source.witness if source else None, f"source is not {source_flag}")
        if instance.source.ring_class.vn_regular.holds:
            regular = instance.source.flag(regular_source_flag)
            if regular is None or not regular.holds:
                return Outcome(Verdict.VIOLATED, regular.witness if regular else None, f"regular source is not {regular_source_flag}")
        return HOLDS

    return check


# registry -----------------------------------------------------------------

def _iff(a: str, b: str) -> str:
    return f"({a} & {b}) | (!{a} & !{b})"


CLAIMS: Tuple[Claim, ...] = (
    Claim(
        "unit-regular-implies-special-clean",
        "unit-regular-special-clean",
        "a unit-regular ring is special clean",
        Scope.RINGS,
        "unit_regular",
        "special_clean",
    ),
    Claim(
        "special-clean-implies-unit-regular",
        "unit-regular-special-clean",
        "a special clean ring is unit-regular",
        Scope.RINGS,
        "special_clean",
        "unit_regular",
    ),
    Claim(
        "abelian-rickart-implies-special-almost-clean",
        "rickart-special-almost-clean",
        "an abelian Rickart ring is special almost clean",
        Scope.RINGS,
        "abelian & rickart_right",
        "special_almost_clean",
    ),
    Claim(
        "abelian-special-almost-clean-implies-rickart",
        "rickart-special-almost-clean",
        "an abelian special almost clean ring is left and right Rickart",
        Scope.RINGS,
        "abelian & special_almost_clean",
        "rickart_right & rickart_left",
    ),
    Claim(
        "rickart-annihilator-witness",
        "rickart-special-almost-clean",
        "in an abelian Rickart ring, ann_r(a) = eR makes a = e + (a - e) special almost clean",
        Scope.RINGS,
        "abelian & rickart_right",
        check=_rickart_witnesses,
    ),
    Claim(
        "abelian-rickart-sides-agree",
        "rickart-special-almost-clean",
        "an abelian ring is right Rickart exactly when it is left Rickart",
        Scope.RINGS,
        "abelian",
        _iff("rickart_right", "rickart_left"),
    ),
    Claim(
        "quasi-continuous-nonsingular-implies-rickart",
        "quasi-continuous",
        "a right quasi-continuous, right nonsingular ring is left and right Rickart",
        Scope.RINGS,
        "quasi_continuous & right_nonsingular",
        "rickart_right & rickart_left",
    ),
    Claim(
        "abelian-quasi-continuous-nonsingular-iff-rickart",
        "quasi-continuous",
        "an abelian right quasi-continuous ring is right nonsingular exactly when it is Rickart",
        Scope.RINGS,
        "abelian & quasi_continuous",
        _iff("right_nonsingular", "rickart"),
    ),
    Claim(
        "quasi-continuous-nonsingular-implies-almost-clean",
        "almost-clean",
        "a right quasi-continuous, right nonsingular ring is almost clean",
        Scope.RINGS,
        "quasi_continuous & right_nonsingular",
        "almost_clean",
    ),
    Claim(
        "cs-nonsingular-implies-almost-clean",
        "almost-clean",
        "a right CS, right nonsingular ring is almost clean",
        Scope.RINGS,
        "CS & right_nonsingular",
        "almost_clean",
    ),
    Claim(
        "cs-idempotent-plus-monomorphism",
        "almost-clean",
        "in a right CS ring every a is e + r with r right regular, r regular when the ring is right nonsingular",
        Scope.RINGS,
        "CS",
        check=_cs_witnesses,
    ),
    Claim(
        "abelian-special-clean-is-unique",
        "uniqueness",
        "an abelian special clean ring is uniquely special clean",
        Scope.RINGS,
        "abelian & special_clean",
        "uniquely_special_clean",
    ),
    Claim(
        "abelian-uniquely-special-clean-implies-unit-regular",
        "uniqueness",
        "an abelian uniquely special clean ring is unit-regular",
        Scope.RINGS,
        "abelian & uniquely_special_clean",
        "unit_regular",
    ),
    Claim(
        "abelian-quasi-continuous-nonsingular-is-uniquely-special-almost-clean",
        "uniqueness",
        "an abelian right quasi-continuous, right nonsingular ring is uniquely special almost clean",
        Scope.RINGS,
        "abelian & quasi_continuous & right_nonsingular",
        "uniquely_special_almost_clean",
    ),
    Claim(
        "abelian-quasi-continuous-rickart-iff-unique",
        "uniqueness",
        "an abelian right quasi-continuous ring is Rickart exactly when it is uniquely special almost clean",
        Scope.RINGS,
        "abelian & quasi_continuous",
        _iff("rickart", "uniquely_special_almost_clean"),
    ),
    Claim(
        "abelian-quasi-continuous-nonsingular-equivalences",
        "equivalences",
        "for an abelian right quasi-continuous, right nonsingular ring: continuous, regular, "
        "unit-regular, uniquely special clean and morphic coincide",
        Scope.RINGS,
        "abelian & quasi_continuous & right_nonsingular",
        "(continuous & vn_regular & unit_regular & uniquely_special_clean & morphic_right)"
        " | (!continuous & !vn_regular & !unit_regular & !uniquely_special_clean & !morphic_right)",
    ),
    Claim(
        "regular-ring-extending-conditions-coincide",
        "equivalences",
        "for a von Neumann regular ring: continuous, quasi-continuous and CS coincide",
        Scope.RINGS,
        "vn_regular",
        "(continuous & quasi_continuous & CS) | (!continuous & !quasi_continuous & !CS)",
    ),
    Claim(
        "c2-implies-c3",
        "invariants",
        "a ring satisfying C2 satisfies C3",
        Scope.RINGS,
        "C2",
        "C3",
    ),
    Claim(
        "finite-regular-elements-are-units",
        "invariants",
        "in a finite ring the regular elements are the units, so almost clean and clean coincide",
        Scope.RINGS,
        check=_finite_regular,
    ),
    Claim(
        "unit-regular-oracles-agree",
        "invariants",
        "a = aua, a = ev and a = v'e' decide unit-regularity identically",
        Scope.RINGS,
        check=_oracles,
    ),
    Claim(
        "regular-module-endomorphisms",
        "modules",
        "End(R_R) is isomorphic to R by a -> L_a",
        Scope.RINGS,
        check=_regular_module_endomorphisms,
        max_order=16,
    ),
    Claim(
        "abelian-rickart-star-implies-special-almost-star-clean",
        "involution",
        "an abelian Rickart *-ring is special almost *-clean",
        Scope.STAR_RINGS,
        "abelian & rickart_star",
        "special_almost_star_clean",
    ),
    Claim(
        "abelian-special-almost-star-clean-implies-rickart-star",
        "involution",
        "an abelian special almost *-clean ring is a Rickart *-ring",
        Scope.STAR_RINGS,
        "abelian & special_almost_star_clean",
        "rickart_star",
    ),
    Claim(
        "abelian-star-regular-implies-special-star-clean",
        "involution",
        "an abelian *-regular ring is special *-clean",
        Scope.STAR_RINGS,
        "abelian & star_regular",
        "special_star_clean",
    ),
    Claim(
        "abelian-special-star-clean-implies-star-regular",
        "involution",
        "an abelian special *-clean ring is *-regular",
        Scope.STAR_RINGS,
        "abelian & special_star_clean",
        "star_regular",
    ),
    Claim(
        "abelian-star-regular-is-uniquely-special-star-clean",
        "involution",
        "an abelian *-regular ring is uniquely special *-clean",
        Scope.STAR_RINGS,
        "abelian & star_regular",
        "uniquely_special_star_clean",
    ),
    Claim(
        "abelian-rickart-star-is-uniquely-special-almost-star-clean",
        "involution",
        "an abelian Rickart *-ring is uniquely special almost *-clean",
        Scope.STAR_RINGS,
        "abelian & rickart_star",
        "uniquely_special_almost_star_clean",
    ),
    Claim(
        "abelian-rickart-star-idempotents-are-projections",
        "involution",
        "in an abelian Rickart *-ring every idempotent is a projection",
        Scope.STAR_RINGS,
        "abelian & rickart_star",
        check=_idempotents_are_projections,
    ),
    Claim(
        "module-c2-implies-c3",
        "modules",
        "a module satisfying C2 satisfies C3",
        Scope.MODULES,
        "C2",
        "C3",
    ),
    Claim(
        "module-cs-idempotent-plus-monomorphism",
        "modules",
        "every endomorphism of a CS module is an idempotent plus a monomorphism",
        Scope.MODULES,
        "CS",
        check=_endomorphism_decompositions((ISOMORPHISM, ESSENTIAL_MONOMORPHISM, "monomorphism")),
    ),
    Claim(
        "module-quasi-continuous-idempotent-plus-essential-monomorphism",
        "modules",
        "every endomorphism of a quasi-continuous module is an idempotent plus an essential monomorphism",
        Scope.MODULES,
        "quasi_continuous",
        check=_endomorphism_decompositions((ISOMORPHISM, ESSENTIAL_MONOMORPHISM)),
    ),
    Claim(
        "module-quasi-continuous-nonsingular-is-almost-clean",
        "modules",
        "a quasi-continuous nonsingular module is almost clean",
        Scope.MODULES,
        "quasi_continuous & nonsingular",
        "almost_clean",
    ),
    Claim(
        "module-quasi-continuous-continuous-iff-condition-c",
        "modules",
        "a quasi-continuous module is continuous exactly when every essential monomorphism in End(M) is onto",
        Scope.MODULES,
        "quasi_continuous",
        _iff("continuous", "condition_c"),
    ),
    Claim(
        "module-summands-agree",
        "modules",
        "summands found by complement search are the images of idempotent endomorphisms",
        Scope.MODULES,
        check=_summands_agree,
    ),
    Claim(
        "singular-to-nonsingular-homs-vanish",
        "modules",
        "every map from a singular module to a nonsingular module is zero",
        Scope.MODULE_PAIRS,
        check=_singular_homs,
    ),
    Claim(
        "embedding-clean-same-idempotents",
        "embeddings",
        "a ring embedded in a clean ring with the same idempotents is almost clean, and clean when regular",
        Scope.EMBEDDINGS,
        check=_embedding_check(DecompositionKind.CLEAN, "clean", "almost_clean", "clean"),
    ),
    Claim(
        "embedding-special-clean-same-idempotents",
        "embeddings",
        "a ring embedded in a special clean ring with the same idempotents is special almost clean, "
        "and special clean when regular",
        Scope.EMBEDDINGS,
        check=_embedding_check(DecompositionKind.SPECIAL_CLEAN, "special_clean", "special_almost_clean", "special_clean"),
    ),
    Claim(
        "embedding-star-clean-same-projections",
        "embeddings",
        "a *-ring embedded in a *-clean ring with the same projections is almost *-clean, and *-clean when regular",
        Scope.EMBEDDINGS,
        check=_embedding_check(DecompositionKind.STAR_CLEAN, "star_clean", "almost_star_clean", "star_clean"),
    ),
    Claim(
        "embedding-special-star-clean-same-projections",
        "embeddings",
        "a *-ring embedded in a special *-clean ring with the same projections is special almost *-clean, "
        "and special *-clean when regular",
        Scope.EMBEDDINGS,
        check=_embedding_check(
            DecompositionKind.SPECIAL_STAR_CLEAN, "special_star_clean", "special_almost_star_clean", "special_star_clean"
        ),
    ),
    Claim(
        "condition-c-almost-clean-module-is-clean",
        "exploratory",
        "an almost clean module whose essential monomorphisms are isomorphisms is clean",
        Scope.MODULES,
        "condition_c & almost_clean",
        "clean",
        exploratory=True,
        note="finite modules have almost clean = clean, so these verdicts are not evidence either way",
    ),
    Claim(
        "rickart-without-abelian-is-special-almost-clean",
        "exploratory",
        "a left and right Rickart ring, not assumed abelian, is special almost clean",
        Scope.RINGS,
        "rickart_right & rickart_left",
        "special_almost_clean",
        exploratory=True,
        note="the abelian hypothesis cannot be dropped entirely; violations here are expected",
    ),
    Claim(
        "special-clean-without-abelian-is-unique",
        "exploratory",
        "a special clean ring, not assumed abelian, is uniquely special clean",
        Scope.RINGS,
        "special_clean",
        "uniquely_special_clean",
        exploratory=True,
        note="records how far uniqueness survives without central idempotents",
    ),
)

_BY_ID: Dict[str, Claim] = {claim.id: claim for claim in CLAIMS}
FAMILIES: Tuple[str, ...] = tuple(dict.fromkeys(claim.family for claim in CLAIMS))

# short reference ids; a bare id also selects its -fwd and -bwd directions
REFERENCES: Dict[str, Tuple[str, ...]] = {
    "T-CK-fwd": ("unit-regular-implies-special-clean",),
    "T-CK-bwd": ("special-clean-implies-unit-regular",),
    "P-2.4": ("module-quasi-continuous-idempotent-plus-essential-monomorphism",),
    "T-2.5": ("module-quasi-continuous-nonsingular-is-almost-clean",),
    "T-2.6": ("cs-nonsingular-implies-almost-clean", "cs-idempotent-plus-monomorphism"),
    "T-3.1-fwd": ("abelian-rickart-implies-special-almost-clean", "rickart-annihilator-witness"),
    "T-3.1-bwd": ("abelian-special-almost-clean-implies-rickart",),
    "T-3.1": ("abelian-rickart-sides-agree",),
    "C-3.3": ("abelian-quasi-continuous-nonsingular-iff-rickart",),
    "C-3.4": ("quasi-continuous-nonsingular-implies-rickart",),
    "P-4.1-fwd": ("abelian-special-clean-is-unique",),
    "P-4.1-bwd": ("abelian-uniquely-special-clean-implies-unit-regular",),
    "C-4.2": ("abelian-quasi-continuous-nonsingular-is-uniquely-special-almost-clean",),
    "C-4.3": ("abelian-quasi-continuous-rickart-iff-unique",),
    "P-4.4": ("abelian-quasi-continuous-nonsingular-equivalences", "regular-ring-extending-conditions-coincide"),
    "T-6.2-fwd": (
        "abelian-rickart-star-implies-special-almost-star-clean",
        "abelian-rickart-star-idempotents-are-projections",
    ),
    "T-6.2-bwd": ("abelian-special-almost-star-clean-implies-rickart-star",),
    "T-6.3-fwd": ("abelian-star-regular-implies-special-star-clean",),
    "T-6.3-bwd": ("abelian-special-star-clean-implies-star-regular",),
    "C-6.4": (
        "abelian-star-regular-is-uniquely-special-star-clean",
        "abelian-rickart-star-is-uniquely-special-almost-star-clean",
    ),
    "INV-C2C3": ("c2-implies-c3", "module-c2-implies-c3"),
    "INV-FIN-REG": ("finite-regular-elements-are-units",),
}
DIRECTIONS = ("-fwd", "-bwd")


def referenced(selector: str) -> List[str]:
    """Registry ids behind a reference id, empty when ``selector`` is not one"""
    ids: List[str] = []
    for ref in (selector, *(selector + d for d in DIRECTIONS)):
        ids.extend(REFERENCES.get(ref, ()))
    return ids


def references_of(claim_id: str) -> List[str]:
    return [ref for ref, ids in REFERENCES.items() if claim_id in ids]


def resolve(selectors: Iterable[str]) -> List[Claim]:
    """Claims named by id, reference id or family, in registry order; ``all`` selects everything"""
    chosen = set()
    for selector in selectors:
        if selector == "all":
            chosen.update(c.id for c in CLAIMS)
        elif selector in _BY_ID:
            chosen.add(selector)
        elif referenced(selector):
            chosen.update(referenced(selector))
        elif selector in FAMILIES:
            chosen.update(c.id for c in CLAIMS if c.family == selector)
        else:
            raise UnknownName(f"no claim or claim family named {selector!r}")
    return [c for c in CLAIMS if c.id in chosen]


# evaluation ---------------------------------------------------------------

class ClaimRunner:
    """Evaluates claims over one catalog; profiles are computed once and shared"""

    def __init__(self, catalog: Catalog, budgets: Optional[Budgets] = None, workers: Optional[int] = None):
        self.catalog = catalog
        self.budgets = budgets or Budgets.from_settings()
        self.workers = workers
        self._rings: Dict[str, Union[RingProfile, BudgetExceeded]] = {}
        self._modules: Dict[str, Union[ModuleProfile, BudgetExceeded]] = {}
        self._embeddings: Dict[str, EmbeddingInstance] = {}

    def ring_profile(self, name: str) -> Union[RingProfile, BudgetExceeded]:
        if name not in self._rings:
            try:
                self._rings[name] = profile_ring(name, self.catalog.rings[name], self.budgets)
            except (BudgetExceeded, SizeBudgetExceeded) as e:
                self._rings[name] = _as_budget(e)
        return self._rings[name]

    def module_profile(self, name: str) -> Union[ModuleProfile, BudgetExceeded]:
        if name not in self._modules:
            try:
                self._modules[name] = profile_module(name, self.catalog.modules[name], self.budgets)
            except (BudgetExceeded, SizeBudgetExceeded) as e:
                self._modules[name] = _as_budget(e)
        return self._modules[name]

    def prepare(self, claims: Sequence[Claim]) -> None:
        """Profile every instance the claims need, over the worker pool"""
        scopes = {c.scope for c in claims}
        rings = list(self.catalog.rings) if scopes & {Scope.RINGS, Scope.STAR_RINGS, Scope.EMBEDDINGS} else []
        modules = list(self.catalog.modules) if scopes & {Scope.MODULES, Scope.MODULE_PAIRS} else []
        ordered_map(self.ring_profile, [n for n in rings if n not in self._rings], self.workers)
        ordered_map(self.module_profile, [n for n in modules if n not in self._modules], self.workers)

    def instances(self, claim: Claim) -> List[Tuple[str, Union[Instance, BudgetExceeded]]]:
        catalog = self.catalog
        if claim.scope in (Scope.RINGS, Scope.STAR_RINGS):
            names = [
                name
                for name, ring in catalog.rings.items()
                if (claim.scope == Scope.RINGS or ring.has_involution)
                and (claim.max_order is None or ring.order <= claim.max_order)
            ]
            return [(name, self.ring_profile(name)) for name in names]
        if claim.scope == Scope.MODULES:
            return [(name, self.module_profile(name)) for name in catalog.modules]
        if claim.scope == Scope.MODULE_PAIRS:
            pairs: List[Tuple[str, Union[Instance, BudgetExceeded]]] = []
            for a, ma in catalog.modules.items():
                for b, mb in catalog.modules.items():
                    if ma.ring is not mb.ring:
                        continue
                    pa, pb = self.module_profile(a), self.module_profile(b)
                    if isinstance(pa, BudgetExceeded):
                        pairs.append((f"{a} -> {b}", pa))
                    elif isinstance(pb, BudgetExceeded):
                        pairs.append((f"{a} -> {b}", pb))
                    else:
                        pairs.append((f"{a} -> {b}", ModulePair(pa, pb)))
            return pairs
        return [(spec.name, self._embedding(spec.name, spec.source, spec.target)) for spec in catalog.embeddings]

    def _embedding(self, name: str, source: str, target: str) -> Union[EmbeddingInstance, BudgetExceeded]:
        if name in self._embeddings:
            return self._embeddings[name]
        ps, pt = self.ring_profile(source), self.ring_profile(target)
        if isinstance(ps, BudgetExceeded):
            return ps
        if isinstance(pt, BudgetExceeded):
            return pt
        try:
            embedding = require_embedding(ps.ring, pt.ring, self.budgets.max_assignments)
        except BudgetExceeded as e:
            return e
        self._embeddings[name] = EmbeddingInstance(name, ps, pt, embedding)
        return self._embeddings[name]

    def evaluate(self, claim: Claim, instance: Union[Instance, BudgetExceeded]) -> Outcome:
        if isinstance(instance, BudgetExceeded):
            return Outcome(Verdict.SKIPPED, note=str(instance))
        if isinstance(instance, (RingProfile, ModuleProfile)):
            values = instance.flags()
            hypothesis = claim.predicate("hypothesis")
            if hypothesis is not None:
                met = hypothesis.evaluate(values)
                if met is None:
                    return Outcome(Verdict.SKIPPED, note=f"hypothesis undecided: {hypothesis.text}")
                if not met:
                    return NOT_MET
            conclusion = claim.predicate("conclusion")
            if conclusion is not None:
                holds = conclusion.evaluate(values)
                if holds is None:
                    return Outcome(Verdict.SKIPPED, note=f"conclusion undecided: {conclusion.text}")
                if not holds:
                    return Outcome(Verdict.VIOLATED, _witnesses(instance, conclusion, values))
        if claim.check is not None:
            try:
                return claim.check(instance, self.budgets)
            except (BudgetExceeded, SizeBudgetExceeded) as e:
                return Outcome(Verdict.SKIPPED, note=str(e))
        return HOLDS

    def run(self, claim: Claim) -> ClaimReport:
        results: List[ClaimResult] = []
        for name, instance in self.instances(claim):
            start_time = time.perf_counter()
            outcome = self.evaluate(claim, instance)
            millis = (time.perf_counter() - start_time) * 1000
            results.append(
                ClaimResult(
                    claim=claim.id,
                    instance=name,
                    verdict=outcome.verdict,
                    witness=outcome.witness,
                    millis=round(millis, 3),
                    note=outcome.note,
                )
            )
            record_verdict(claim.id, outcome.verdict.value)
            if outcome.verdict == Verdict.SKIPPED:
                record_budget_skip(f"claim {claim.id}")
            if outcome.verdict == Verdict.VIOLATED:
                log = logger.warning if claim.exploratory else logger.error
                log("claim violated", claim=claim.id, instance=name, witness=outcome.witness, note=outcome.note)
        report = ClaimReport(
            claim=claim.id,
            family=claim.family,
            statement=claim.statement,
            refs=references_of(claim.id),
            exploratory=claim.exploratory,
            results=results,
        )
        logger.info(
            "claim finished",
            claim=claim.id,
            instances=len(results),
            holds=report.count(Verdict.HOLDS),
            violated=report.count(Verdict.VIOLATED),
            skipped=report.count(Verdict.SKIPPED),
        )
        return report


def _as_budget(error: Union[BudgetExceeded, SizeBudgetExceeded]) -> BudgetExceeded:
    if isinstance(error, BudgetExceeded):
        return error
    return BudgetExceeded(error.what, error.limit, f"order {error.size}")


def _witnesses(instance: Union[RingProfile, ModuleProfile], conclusion: Predicate, values: Dict[str, Optional[bool]]) -> Dict[str, Any]:
    """Witnesses of the conclusion flags that failed, by flag name"""
    found: Dict[str, Any] = {}
    for name in sorted(conclusion.flags()):
        flag = instance.flag(name)
        if values.get(name) is False and flag is not None:
            found[name] = flag.witness
    return found


def run_claim(claim_id: str, catalog: Catalog, budgets: Optional[Budgets] = None) -> ClaimReport:
    """One claim by id or reference id over every matching instance of the catalog.

    A reference id covering several registry claims gives one report whose
    results keep the registry id of the claim they came from.
    """
    if claim_id in _BY_ID:
        claims = [_BY_ID[claim_id]]
    elif referenced(claim_id):
        claims = resolve([claim_id])
    else:
        raise UnknownName(f"no claim named {claim_id!r}")
    runner = ClaimRunner(catalog, budgets)
    runner.prepare(claims)
    reports = [runner.run(claim) for claim in claims]
    if len(reports) == 1:
        return reports[0]
    return ClaimReport(
        claim=claim_id,
        family=claims[0].family,
        statement="; ".join(c.statement for c in claims),
        refs=[claim_id],
        exploratory=all(c.exploratory for c in claims),
        results=[result for report in reports for result in report.results],
    )


def run_claims(
    selectors: Iterable[str],
    catalog: Catalog,
    budgets: Optional[Budgets] = None,
    workers: Optional[int] = None,
) -> VerifyReport:
    claims = resolve(selectors)
    runner = ClaimRunner(catalog, budgets, workers)
    runner.prepare(claims)
    return VerifyReport(
        catalog=catalog.name,
        catalog_digest=catalog.digest(),
        claims=[runner.run(claim) for claim in claims],
        duplicates=catalog.duplicates,
    )


def exit_code(report: VerifyReport) -> int:
    """0 clean, 2 when a non-exploratory claim is violated, 3 when only budget skips remain"""
    binding = [c for c in report.claims if not c.exploratory]
    if any(c.count(Verdict.VIOLATED) for c in binding):
        return 2
    if any(c.count(Verdict.SKIPPED) for c in binding):
        return 3
    return 0
