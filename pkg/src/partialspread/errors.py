"""Exception types shared across the package."""

from __future__ import annotations


class PartialSpreadError(Exception):
    """Base class for all errors raised by this package."""


class NotAPrimePower(PartialSpreadError, ValueError):
    pass


class TooLarge(PartialSpreadError, ValueError):
    pass


class DivisionByZero(PartialSpreadError, ZeroDivisionError):
    pass


class DimensionZero(PartialSpreadError, ValueError):
    """The span of the given vectors is the zero space."""


class CtxMismatch(PartialSpreadError, ValueError):
    """Operands live in different ambient spaces."""


class BadParams(PartialSpreadError, ValueError):
    pass


class NotApplicable(PartialSpreadError, ValueError):
    """A bound was requested outside the parameter range where it holds."""


class HypothesisNotMet(PartialSpreadError, ValueError):
    pass


class TooFewMembers(PartialSpreadError, ValueError):
    pass


class CandidateCapExceeded(PartialSpreadError, RuntimeError):
    pass


class IdentityViolation(PartialSpreadError, AssertionError):
    """A counting identity that must hold for every partition failed.

    Seeing this means there is a bug in the partition or space code.
    """


class FormatError(PartialSpreadError, ValueError):
    """Malformed or non-canonical spread file."""


class ValidationError(PartialSpreadError):
    """Base for failures found while validating a spread or partition."""


class OverlapError(ValidationError):
    """Two members share a point."""

    def __init__(self, first: int, second: int, point: int) -> None:
        self.first = first
        self.second = second
        self.point = point
        super().__init__(f"OverlapError members ({first},{second}) share point {point}")


class CoverageError(ValidationError):
    def __init__(self, point: int) -> None:
        self.point = point
        super().__init__(f"CoverageError point {point} is not covered")


class DimensionError(ValidationError):
    def __init__(self, index: int, dim: int, expected: int) -> None:
        self.index = index
        self.dim = dim
        self.expected = expected
        super().__init__(
            f"DimensionError member {index} has dimension {dim}, expected {expected}"
        )
