"""Exception hierarchy.

Every domain error carries a stable machine-readable ``code`` so the command
line front end can map it onto an error document.
"""

from __future__ import annotations


class AbelicError(Exception):
    code = "ABELIC_ERROR"


class NotSquarefree(AbelicError):
    code = "NOT_SQUAREFREE"


class BadConductor(AbelicError):
    code = "BAD_CONDUCTOR"


class OrderMismatch(AbelicError):
    code = "ORDER_MISMATCH"


class NonEuclideanOrder(AbelicError):
    code = "NON_EUCLIDEAN_ORDER"


class SingularMatrix(AbelicError):
    code = "SINGULAR_MATRIX"


class SizeMismatch(AbelicError):
    code = "SIZE_MISMATCH"


class BadDimension(AbelicError):
    code = "BAD_DIMENSION"


class ZeroStabOrder(AbelicError):
    code = "ZERO_STAB_ORDER"


class ModulusIncompatible(AbelicError):
    code = "MODULUS_INCOMPATIBLE"


class BadMultiplicity(AbelicError):
    code = "BAD_MULTIPLICITY"


class BadIndexRange(AbelicError):
    code = "BAD_INDEX_RANGE"


class InconsistentSplit(AbelicError):
    code = "INCONSISTENT_SPLIT"


class NotSaturated(AbelicError):
    code = "NOT_SATURATED"


class SearchBudgetExceeded(AbelicError):
    code = "SEARCH_BUDGET_EXCEEDED"


class MinorVanished(AbelicError):
    code = "MINOR_VANISHED"


class PrecisionTooLow(AbelicError):
    code = "PRECISION_TOO_LOW"


class BadDimensions(AbelicError):
    code = "BAD_DIMENSIONS"


class EmptyFactorList(AbelicError):
    code = "EMPTY_FACTOR_LIST"


class CapExceeded(AbelicError):
    code = "CAP_EXCEEDED"


class EmptySet(AbelicError):
    code = "EMPTY_SET"


class DomainValueError(AbelicError):
    """Invalid argument value that is not covered by a more specific error."""

    code = "BAD_VALUE"


class MalformedInput(AbelicError):
    """The input document does not parse or does not match its schema."""

    code = "MALFORMED_INPUT"


ALL_ERRORS = tuple(
    cls for cls in list(globals().values())
    if isinstance(cls, type) and issubclass(cls, AbelicError)
)
