"""
Exception hierarchy for Clean Ring Lab
"""

from typing import Any, Optional, Tuple


class RingLabError(Exception):
    """Base class for every error raised by the library"""


# Input errors ---------------------------------------------------------------

class TableShapeError(RingLabError, ValueError):
    """Operation tables are not dimensionally consistent"""


class RingValidationError(RingLabError, ValueError):
    """A ring axiom fails; ``witness`` names the first failing tuple"""

    def __init__(self, message: str, witness: Tuple[int, ...] = ()):
        super().__init__(f"{message} (witness {witness})" if witness else message)
        self.witness = witness


class NotAGroup(RingValidationError):
    pass


class NotAssociative(RingValidationError):
    pass


class NoIdentity(RingValidationError):
    pass


class NotDistributive(RingValidationError):
    pass


class BadInvolution(RingValidationError):
    pass


class ModuleValidationError(RingValidationError):
    """A module axiom fails"""


class NonPrimeCharacteristic(RingLabError, ValueError):
    pass


class SpecSyntaxError(RingLabError, ValueError):
    """Malformed ring/module DSL text"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownConstructor(SpecSyntaxError):
    pass


class UnknownName(RingLabError, ValueError):
    pass


class InvalidElement(RingLabError, ValueError):
    """An element index outside 0..order-1"""


class CatalogError(RingLabError, ValueError):
    """A catalog file failed to parse, construct or validate"""

    def __init__(self, path: str, cause: Exception, line: Optional[int] = None):
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {cause}")
        self.path = path
        self.line = line
        self.cause = cause


class PredicateSyntaxError(RingLabError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"column {position + 1}: {message}")
        self.position = position


class UnknownFlag(PredicateSyntaxError):
    pass


class EmbeddingError(RingLabError, ValueError):
    pass


# Resource errors ------------------------------------------------------------

class SizeBudgetExceeded(RingLabError):
    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} has order {size}, above the configured cap {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class BudgetExceeded(RingLabError):
    def __init__(self, what: str, limit: int, detail: Any = None):
        message = f"{what} exceeded budget {limit}"
        if detail is not None:
            message += f" ({detail})"
        super().__init__(message)
        self.what = what
        self.limit = limit
        self.detail = detail


# Domain outcomes ------------------------------------------------------------

class NotContained(RingLabError, ValueError):
    pass


class NotAbelian(RingLabError):
    def __init__(self, witness: Tuple[int, int]):
        super().__init__(f"ring is not abelian: idempotent {witness[0]} does not commute with {witness[1]}")
        self.witness = witness


class NotRickartAt(RingLabError):
    def __init__(self, element: int):
        super().__init__(f"right annihilator of {element} is not generated by an idempotent")
        self.element = element


class NoDecomposition(RingLabError):
    pass


class InvariantViolation(AssertionError):
    """An internal cross-check disagreed; always a defect, never an input problem"""
