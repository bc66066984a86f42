"""
Pydantic models for every report the library and command line produce
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ringlab.core.fingerprint import Fingerprint


class Verdict(str, Enum):
    """Per-instance outcome of a claim"""
    HOLDS = "holds"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"
    VIOLATED = "VIOLATED"
    SKIPPED = "skipped"


class DecompositionKind(str, Enum):
    """Clean-family decomposition kinds, plain and involutive"""
    CLEAN = "clean"
    ALMOST_CLEAN = "almost_clean"
    SPECIAL_CLEAN = "special_clean"
    SPECIAL_ALMOST_CLEAN = "special_almost_clean"
    STAR_CLEAN = "star_clean"
    ALMOST_STAR_CLEAN = "almost_star_clean"
    SPECIAL_STAR_CLEAN = "special_star_clean"
    SPECIAL_ALMOST_STAR_CLEAN = "special_almost_star_clean"

    @property
    def needs_unit(self) -> bool:
        return "almost" not in self.value

    @property
    def special(self) -> bool:
        return self.value.startswith("special")

    @property
    def star(self) -> bool:
        return "star" in self.value


class Flag(BaseModel):
    """A decided property; ``holds`` is None when it was not computed"""
    holds: Optional[bool] = Field(None, description="True/False, or None when skipped or not applicable")
    witness: Optional[Any] = Field(None, description="Least-index witness or counterexample")
    note: Optional[str] = Field(None, description="Why the flag was skipped, or what the witness means")

    @classmethod
    def true(cls, witness: Any = None, note: Optional[str] = None) -> "Flag":
        return cls(holds=True, witness=witness, note=note)

    @classmethod
    def false(cls, witness: Any = None, note: Optional[str] = None) -> "Flag":
        return cls(holds=False, witness=witness, note=note)

    @classmethod
    def skipped(cls, note: str) -> "Flag":
        return cls(holds=None, note=note)


class Decomposition(BaseModel):
    """a = e + u with e idempotent"""
    element: int = Field(..., description="The decomposed element a")
    idempotent: int = Field(..., description="The idempotent (or projection) e")
    complement: int = Field(..., description="u = a - e")
    u_is_unit: bool = Field(..., description="u is a unit")
    u_is_regular: bool = Field(..., description="u is a regular element (non-zero-divisor)")
    special: bool = Field(..., description="aR and eR meet only in 0")
    e_is_projection: Optional[bool] = Field(None, description="e is self-adjoint; None without involution")


class ElementReport(BaseModel):
    """Element classes of a ring, each as a sorted index list"""
    idempotents: List[int]
    units: List[int]
    regular: List[int]
    left_regular: List[int]
    right_regular: List[int]
    central: List[int]
    projections: Optional[List[int]] = None
    inverses: Dict[int, int] = Field(default_factory=dict, description="unit -> inverse")
    abelian: Flag


class CleannessReport(BaseModel):
    """Clean-family predicates; star flags are None without an involution"""
    clean: Flag
    almost_clean: Flag
    special_clean: Flag
    special_almost_clean: Flag
    uniquely_special_clean: Flag
    uniquely_special_almost_clean: Flag
    star_clean: Flag = Field(default_factory=Flag)
    almost_star_clean: Flag = Field(default_factory=Flag)
    special_star_clean: Flag = Field(default_factory=Flag)
    special_almost_star_clean: Flag = Field(default_factory=Flag)
    uniquely_special_star_clean: Flag = Field(default_factory=Flag)
    uniquely_special_almost_star_clean: Flag = Field(default_factory=Flag)


class RingClassReport(BaseModel):
    """Ring-level classes; lattice flags are None when a budget ran out"""
    vn_regular: Flag
    unit_regular: Flag
    rickart_right: Flag
    rickart_left: Flag
    right_nonsingular: Flag
    left_nonsingular: Flag
    CS: Flag
    C2: Flag
    C3: Flag
    quasi_continuous: Flag
    continuous: Flag
    morphic_right: Flag
    morphic_left: Flag
    reduced: Flag
    star_regular: Flag = Field(default_factory=Flag)
    rickart_star: Flag = Field(default_factory=Flag)
    singular_ideal: Optional[List[int]] = Field(None, description="Z(R_R)")
    left_singular_ideal: Optional[List[int]] = Field(None, description="Z(_RR)")
    right_ideal_count: Optional[int] = None
    summand_count: Optional[int] = None


class RingReport(BaseModel):
    """Everything ``classify`` computes for one ring"""
    name: str
    order: int
    involution: bool
    fingerprint: Fingerprint
    elements: ElementReport
    cleanness: CleannessReport
    ring_class: RingClassReport
    notes: List[str] = Field(default_factory=list)


class IdealEntry(BaseModel):
    elements: List[int]
    summand: bool
    essential: bool = Field(..., description="Essential in R_R")
    idempotents: List[int] = Field(default_factory=list, description="Idempotents e with eR equal to this ideal")


class LatticeReport(BaseModel):
    name: str
    order: int
    side: str
    ideals: List[IdealEntry]
    CS: Flag
    C2: Flag
    C3: Flag
    singular_ideal: List[int]


class ModuleReport(BaseModel):
    """Flags of a finite module and its endomorphism ring"""
    name: str
    ring: str
    order: int
    submodule_count: Optional[int] = None
    endomorphism_ring_order: Optional[int] = None
    C1: Flag
    C2: Flag
    C3: Flag
    CS: Flag
    quasi_continuous: Flag
    continuous: Flag
    nonsingular: Flag
    clean: Flag
    almost_clean: Flag
    condition_c: Flag = Field(..., description="Every essential monomorphism in End(M) is an isomorphism")
    singular_submodule: Optional[List[int]] = None
    notes: List[str] = Field(default_factory=list)


class EndoDecomposition(BaseModel):
    """f = e + u in End(M), endomorphisms given by value tables"""
    endomorphism: List[int]
    idempotent: List[int]
    complement: List[int]
    kind: str = Field(..., description="isomorphism, essential_monomorphism or monomorphism")


class CsLevelReport(BaseModel):
    ring: str
    kmax: int
    level: int = Field(..., description="Largest k <= kmax with R^k CS")
    flags: Dict[int, bool]


class ClaimResult(BaseModel):
    """One instance of one claim"""
    claim: str
    instance: str
    verdict: Verdict
    witness: Optional[Any] = None
    millis: float = Field(..., description="Wall time in milliseconds; excluded from reproducibility")
    note: Optional[str] = None


class ClaimReport(BaseModel):
    claim: str
    family: str
    statement: str
    refs: List[str] = Field(default_factory=list, description="Short reference ids that select this claim")
    exploratory: bool = False
    results: List[ClaimResult]

    def count(self, verdict: Verdict) -> int:
        return sum(1 for r in self.results if r.verdict == verdict)


class VerifyReport(BaseModel):
    catalog: str
    catalog_digest: str
    claims: List[ClaimReport]
    duplicates: List[List[str]] = Field(default_factory=list, description="Groups of fingerprint-equal instances")


class Finding(BaseModel):
    spec: str
    fingerprint: Fingerprint
    flags: Dict[str, Optional[bool]]
    path: Optional[str] = None


class SearchReport(BaseModel):
    predicate: str
    examined: int
    skipped: int
    partial: bool = Field(False, description="True when the search stopped on a budget")
    findings: List[Finding]


class DecompositionListing(BaseModel):
    """Output of ``decompose``; ``witness`` names the constructive witness when one was asked for"""
    ring: str
    element: int
    kind: str
    witness: Optional[str] = Field(None, description="rickart or cs")
    decompositions: List[Decomposition]


class ClaimInfo(BaseModel):
    id: str
    family: str
    statement: str
    refs: List[str] = Field(default_factory=list)
    exploratory: bool


class CatalogEntry(BaseModel):
    name: str
    kind: str = Field(..., description="ring, module or embedding")
    statement: str
    order: Optional[int] = None
    involution: Optional[bool] = None
    fingerprint: Optional[str] = Field(None, description="Short fingerprint hash of a ring")


class CatalogListing(BaseModel):
    catalog: str
    digest: str
    entries: List[CatalogEntry]
    duplicates: List[List[str]] = Field(default_factory=list)


class ErrorResponse(BaseModel):
    """Error document printed by the command line in --json mode"""
    error: str = Field(..., description="Error class name")
    detail: Optional[str] = Field(None, description="Error message")
