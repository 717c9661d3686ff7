"""
Exception hierarchy for phspline.

Input problems derive from ``ValueError`` and map to CLI exit code 2;
numerical breakdowns derive from ``ArithmeticError`` and map to exit code 1.
"""

from typing import Any, Optional


class PHSplineError(Exception):
    """Base class for every error raised by the package."""


class InputError(PHSplineError, ValueError):
    """Invalid user-supplied data."""

    exit_code = 2


class NumericalError(PHSplineError, ArithmeticError):
    """A numerical step could not be completed."""

    exit_code = 1


class NonIncreasing(InputError):
    pass


class TooFewKnots(InputError):
    pass


class ModeMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class OutOfDomain(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class DegenerateInput(InputError):
    pass


class UnsupportedCase(InputError):
    pass


class ZeroTangent(InputError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class NonRegular(NumericalError):
    """Parametric speed vanishes; ``parameter`` is the offending value of t."""

    def __init__(self, message: str, parameter: Optional[float] = None):
        super().__init__(message)
        self.parameter = parameter


class ZeroPreimage(NumericalError):
    pass


class DegenerateDiscriminant(NumericalError):
    pass


class NoConvergence(NumericalError):
    """Iteration stopped without meeting its tolerance."""

    def __init__(self, message: str, best: Any = None, residual: float = float("inf")):
        super().__init__(message)
        self.best = best
        self.residual = residual


class AxisAlignedTangent(NumericalError):
    pass


class IdenticalConics(NumericalError):
    pass


class SplitFailure(NumericalError):
    pass


class NoSolutions(NumericalError):
    """No interpolant exists for the data; ``report`` holds the feasibility analysis."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


__all__ = [
    "PHSplineError",
    "InputError",
    "NumericalError",
    "NonIncreasing",
    "TooFewKnots",
    "ModeMismatch",
    "IndexOutOfRange",
    "OutOfDomain",
    "ShapeMismatch",
    "DegenerateInput",
    "UnsupportedCase",
    "ZeroTangent",
    "NotPositiveDefinite",
    "NonRegular",
    "ZeroPreimage",
    "DegenerateDiscriminant",
    "NoConvergence",
    "AxisAlignedTangent",
    "IdenticalConics",
    "SplitFailure",
    "NoSolutions",
]
