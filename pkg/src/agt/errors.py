"""Exception types raised by the library.

Every error the public operations can raise derives from :class:`AgtError`,
so callers (the CLI in particular) can catch one base class.
"""

from __future__ import annotations


class AgtError(Exception):
    """Base class for all library errors."""


class RankMismatch(AgtError):
    pass


class RankTooLarge(AgtError):
    pass


class IndexOutOfRange(AgtError):
    pass


class InternalMismatch(AgtError):
    """Two independent algorithms disagreed. Never expected to fire."""


class NotAdmissible(AgtError):
    pass


class NotAdmissibleWeight(AgtError):
    pass


class NotDominantIntegral(AgtError):
    pass


class ClosureViolation(AgtError):
    """A generator produced a nonzero term outside the module basis."""

    def __init__(self, message: str, shift=None, coefficient=None):
        super().__init__(message)
        self.shift = shift
        self.coefficient = coefficient


class NotInBasis(AgtError):
    pass


class HypothesisViolated(AgtError):
    pass


class ParameterConstraintViolated(AgtError):
    pass


class NotFirstRoot(AgtError):
    pass


class NotInjective(AgtError):
    pass
