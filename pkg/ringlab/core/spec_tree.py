"""
Expression trees of the ring/module specification language
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class GF:
    p: int
    k: int = 1


@dataclass(frozen=True)
class Matrix:
    base: "RingExpr"
    k: int


@dataclass(frozen=True)
class UpperTri:
    base: "RingExpr"
    k: int


@dataclass(frozen=True)
class Product:
    left: "RingExpr"
    right: "RingExpr"


@dataclass(frozen=True)
class Opposite:
    base: "RingExpr"


@dataclass(frozen=True)
class Raw:
    path: str


@dataclass(frozen=True)
class NameRef:
    name: str


RingExpr = Union[ZMod, GF, Matrix, UpperTri, Product, Opposite, Raw, NameRef]

INVOLUTION_KINDS = ("identity", "transpose", "swap", "raw")


@dataclass(frozen=True)
class Involution:
    kind: str
    path: Optional[str] = None


@dataclass(frozen=True)
class RingSpec:
    """``ring <name> = <expr> [with involution <kind>]``"""

    name: str
    expr: RingExpr
    involution: Optional[Involution] = None
    line: int = 0


@dataclass(frozen=True)
class Free:
    k: int


@dataclass(frozen=True)
class Cyclic:
    """R/I where I is the right ideal generated by ``generators``"""

    generators: Tuple[int, ...]


@dataclass(frozen=True)
class DirectSum:
    parts: Tuple["ModuleExpr", ...]


@dataclass(frozen=True)
class RawModule:
    path: str


@dataclass(frozen=True)
class ModuleRef:
    name: str


ModuleExpr = Union[Free, Cyclic, DirectSum, RawModule, ModuleRef]


@dataclass(frozen=True)
class ModuleSpec:
    """``module <name> over <ring> = <module-expr>``"""

    name: str
    ring: str
    expr: ModuleExpr
    line: int = 0


@dataclass(frozen=True)
class EmbeddingSpec:
    """``embedding <name> = <ring> into <ring>``"""

    name: str
    source: str
    target: str
    line: int = 0


Statement = Union[RingSpec, ModuleSpec, EmbeddingSpec]


def references(expr: RingExpr) -> Tuple[str, ...]:
    """Names a ring expression depends on"""
    if isinstance(expr, NameRef):
        return (expr.name,)
    if isinstance(expr, (Matrix, UpperTri, Opposite)):
        return references(expr.base)
    if isinstance(expr, Product):
        return references(expr.left) + references(expr.right)
    return ()


def is_self_contained(expr: RingExpr) -> bool:
    """True when the expression needs neither other statements nor files"""
    if isinstance(expr, (NameRef, Raw)):
        return False
    if isinstance(expr, (Matrix, UpperTri, Opposite)):
        return is_self_contained(expr.base)
    if isinstance(expr, Product):
        return is_self_contained(expr.left) and is_self_contained(expr.right)
    return True
