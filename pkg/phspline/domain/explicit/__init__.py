"""Closed-form coefficient tables for cubic and quintic PH B-splines."""

from .case import ExplicitCase
from .forms import ExplicitCurve, explicit_chi, explicit_curve, explicit_offset, explicit_zeta
from .preimage import ClosureResult, Wrap, close_preimage, closed_cubic_preimage, closed_preimage_newton

__all__ = [
    "ExplicitCase",
    "ExplicitCurve",
    "explicit_chi",
    "explicit_zeta",
    "explicit_curve",
    "explicit_offset",
    "Wrap",
    "ClosureResult",
    "closed_cubic_preimage",
    "closed_preimage_newton",
    "close_preimage",
]
