"""Pythagorean-hodograph B-spline curves in the plane."""

__version__ = "0.1.0"

from .domain.explicit import explicit_curve, explicit_offset
from .domain.hermite import HermiteProblem, feasibility, solve_hermite
from .domain.knots import KnotVector, Mode, build_mu, derive_partitions
from .domain.ph_curve import arc_length, offset, ph_from_preimage

__all__ = [
    "__version__",
    "KnotVector",
    "Mode",
    "build_mu",
    "derive_partitions",
    "ph_from_preimage",
    "arc_length",
    "offset",
    "explicit_curve",
    "explicit_offset",
    "HermiteProblem",
    "solve_hermite",
    "feasibility",
]
