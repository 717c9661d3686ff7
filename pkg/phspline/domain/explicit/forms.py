"""
Closed-form product tensors, control points, arc lengths and offsets for
clamped and closed cubic and quintic PH B-splines.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from types import ModuleType
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from ...common.errors import ShapeMismatch, UnsupportedCase
from ..bspline import Spline
from ..knots import Mode, PartitionSet
from ..ph_curve import RationalSpline
from ..product import ProductTensor
from . import clamped_cubic, clamped_quintic, closed_cubic, closed_quintic
from .case import ExplicitCase

logger = logging.getLogger(__name__)

_TABLES: Dict[Tuple[int, Mode], ModuleType] = {
    (1, Mode.CLAMPED): clamped_cubic,
    (2, Mode.CLAMPED): clamped_quintic,
    (1, Mode.CLOSED): closed_cubic,
    (2, Mode.CLOSED): closed_quintic,
}

CaseLike = Union[ExplicitCase, PartitionSet]


def _case(case: CaseLike) -> ExplicitCase:
    return case if isinstance(case, ExplicitCase) else ExplicitCase.from_partitions(case)


def _tables(case: ExplicitCase) -> ModuleType:
    try:
        return _TABLES[case.key]
    except KeyError:
        raise UnsupportedCase(f"no closed-form tables for {case.mode.value} degree-{case.n}") from None


def _complex_product(x: complex, y: complex) -> complex:
    return x * y


def _real_pairing(x: complex, y: complex) -> complex:
    # (x conj(y) + y conj(x)) / 2
    return complex((x * np.conj(y)).real, 0.0)


@dataclass(frozen=True, eq=False)
class ExplicitCurve:
    """Coefficient sequences of an explicitly built PH curve."""

    case: ExplicitCase
    z: np.ndarray
    p: np.ndarray
    r: np.ndarray
    sigma: np.ndarray
    l: np.ndarray
    L: float

    @property
    def curve(self) -> Spline:
        parts = self.case.partitions
        return Spline(2 * parts.n + 1, parts.rho, self.r, parts.domain)

    @property
    def hodograph(self) -> Spline:
        parts = self.case.partitions
        return Spline(2 * parts.n, parts.nu, self.p, parts.domain)

    @property
    def speed(self) -> Spline:
        parts = self.case.partitions
        return Spline(2 * parts.n, parts.nu, self.sigma, parts.domain)

    @property
    def arc_length(self) -> Spline:
        parts = self.case.partitions
        return Spline(2 * parts.n + 1, parts.rho, self.l, parts.domain)

    def to_dict(self) -> dict:
        return {
            "source": "explicit",
            "case": self.case.to_dict(),
            "z": [[float(c.real), float(c.imag)] for c in self.z],
            "p": [[float(c.real), float(c.imag)] for c in self.p],
            "r": [[float(c.real), float(c.imag)] for c in self.r],
            "sigma": [float(s) for s in self.sigma],
            "l": [float(v) for v in self.l],
            "L": self.L,
        }


def explicit_chi(case: CaseLike) -> ProductTensor:
    """chi^{i,j}_k from the closed-form tables."""
    case = _case(case)
    return ProductTensor(_tables(case).chi(case), symmetric=True)


def explicit_zeta(case: CaseLike) -> ProductTensor:
    """zeta^{i,j}_k from the closed-form tables, unused end entries included."""
    case = _case(case)
    return ProductTensor(_tables(case).zeta(case), symmetric=False)


def _accumulate(start: complex, weights: np.ndarray, steps: np.ndarray, degree: int) -> np.ndarray:
    out = np.empty(steps.size + 1, dtype=np.result_type(steps, type(start)))
    out[0] = start
    out[1:] = start + np.cumsum(weights * steps / degree)
    return out


def explicit_curve(case: CaseLike, z: Sequence[complex], r0: complex = 0j) -> ExplicitCurve:
    """
    Hodograph, control points, parametric speed and arc length by the
    closed-form recursions r_{i+1} = r_i + w_i p_i / (2n + 1).
    """
    case = _case(case)
    tables = _tables(case)
    coeffs = np.asarray(z, dtype=complex)
    if coeffs.ndim != 1 or coeffs.size != case.preimage_size:
        raise ShapeMismatch(
            f"{case.mode.value} degree-{case.n} case with m={case.m} needs {case.preimage_size} coefficients, got {coeffs.size}"
        )
    p = tables.hodograph(case, coeffs, _complex_product)
    sigma = tables.hodograph(case, coeffs, _real_pairing).real.copy()
    weights = tables.span_weights(case)
    degree = 2 * case.n + 1
    r = _accumulate(complex(r0), weights, p, degree)
    l = _accumulate(0.0, weights, sigma, degree).real
    total = tables.total_length(case, l)
    logger.debug(
        json.dumps({"event": "explicit_curve", "n": case.n, "mode": case.mode.value, "m": case.m, "L": total})
    )
    return ExplicitCurve(case=case, z=coeffs, p=p, r=r, sigma=sigma, l=l, L=total)


def explicit_offset(curve: ExplicitCurve, h: float = 0.0) -> RationalSpline:
    """
    Offset weights gamma_k and points q_k from the closed-form entries.

    Each entry is a sum of terms c R S: gamma_k takes S over sigma, q_k takes
    R over r times S over sigma minus i h S over p.
    """
    case = curve.case
    terms = _tables(case).offset_terms(case)
    gamma = terms.weights(curve.sigma).real
    q = terms.points(curve.r, curve.sigma) - 1j * h * terms.weights(curve.p)
    parts = case.partitions
    degree = 4 * case.n + 1
    logger.debug(json.dumps({"event": "explicit_offset", "n": case.n, "mode": case.mode.value, "h": float(h)}))
    return RationalSpline(
        numerator=Spline(degree, parts.tau, q, parts.domain),
        weights=Spline(degree, parts.tau, gamma, parts.domain),
        h=float(h),
    )


__all__ = [
    "ExplicitCurve",
    "explicit_chi",
    "explicit_zeta",
    "explicit_curve",
    "explicit_offset",
]
