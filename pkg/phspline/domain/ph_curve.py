"""
Pythagorean-hodograph B-spline curves built from complex preimages.

A preimage z(t) of degree n over mu gives the hodograph p(t) = z(t)^2 over nu,
the curve r(t) over rho by integration, the parametric speed sigma(t) = |z(t)|^2,
the arc-length spline, and rational offsets over tau.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import DegenerateInput, ModeMismatch, NonRegular, ShapeMismatch, ZeroPreimage
from ..common.settings import numerics
from .bspline import Spline, basis_matrix, spline_integrate
from .knots import Mode, PartitionSet, derive_partitions
from .product import ProductTensor, gauss_nodes, solve_chi, solve_zeta

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PHCurve:
    """A PH B-spline curve: r'(t) = z(t)^2 with control points r_i over rho."""

    preimage: Spline
    hodograph: Spline
    curve: Spline
    sigma: Spline
    partitions: PartitionSet
    r0: complex
    chi: Optional[ProductTensor] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.partitions.n

    @property
    def mode(self) -> Mode:
        return self.partitions.mode

    @property
    def domain(self) -> Tuple[float, float]:
        return self.partitions.domain

    @property
    def control_points(self) -> np.ndarray:
        return self.curve.coeffs

    def __call__(self, t: float) -> complex:
        return complex(self.curve(t))

    def sample(self, count: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.curve.sample(count)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "n": self.n,
            "mu": [float(k) for k in self.partitions.mu.flat],
            "z": [[float(c.real), float(c.imag)] for c in self.preimage.coeffs],
            "r0": [self.r0.real, self.r0.imag],
            "rho": [float(k) for k in self.curve.kv.flat],
            "p": [[float(c.real), float(c.imag)] for c in self.hodograph.coeffs],
            "r": [[float(c.real), float(c.imag)] for c in self.curve.coeffs],
            "sigma": self.sigma.to_dict(),
            "domain": list(self.domain),
        }


@dataclass(frozen=True, eq=False)
class ArcLength:
    """Cumulative arc length l(t) as a spline over rho, plus the total length."""

    spline: Spline
    total: float

    def at(self, t: float) -> float:
        return float(self.spline(t))

    def to_dict(self) -> dict:
        return {"total": self.total, "spline": self.spline.to_dict()}


@dataclass(frozen=True, eq=False)
class RationalSpline:
    """(sum q_k N_k) / (sum gamma_k N_k) over tau."""

    numerator: Spline
    weights: Spline
    h: float = 0.0

    def __post_init__(self) -> None:
        if self.numerator.coeffs.size != self.weights.coeffs.size:
            raise ShapeMismatch("numerator and weights must have the same length")

    @property
    def degree(self) -> int:
        return self.numerator.degree

    @property
    def points(self) -> np.ndarray:
        return self.numerator.coeffs

    @property
    def gamma(self) -> np.ndarray:
        return self.weights.coeffs

    def __call__(self, t: float) -> complex:
        return complex(self.numerator(t)) / float(self.weights(t))

    def evaluate(self, ts: Sequence[float]) -> np.ndarray:
        return self.numerator.evaluate(ts) / self.weights.evaluate(ts)

    def sample(self, count: int) -> Tuple[np.ndarray, np.ndarray]:
        ts = np.linspace(self.numerator.domain[0], self.numerator.domain[1], count)
        return ts, self.evaluate(ts)

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "degree": self.degree,
            "tau": [float(k) for k in self.numerator.kv.flat],
            "q": [[float(c.real), float(c.imag)] for c in self.numerator.coeffs],
            "gamma": [float(g) for g in self.weights.coeffs],
            "domain": list(self.numerator.domain),
        }


@dataclass(frozen=True)
class Frame:
    tangent: Tuple[float, float]
    normal: Tuple[float, float]
    kappa: float


@dataclass(frozen=True)
class ClampedReport:
    """Residuals of the clamped end conditions (positions and tangents)."""

    alpha: float
    beta: float
    position_start: float
    position_end: float
    tangent_start: float
    tangent_end: float
    tolerance: float

    @property
    def residuals(self) -> Tuple[float, float, float, float]:
        return self.position_start, self.position_end, self.tangent_start, self.tangent_end

    @property
    def ok(self) -> bool:
        return bool(max(self.residuals) <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "residuals": list(self.residuals),
            "ok": self.ok,
        }


@dataclass(frozen=True)
class ClosedReport:
    """Closing residuals (one per k = 0..n), span mirroring and preimage wrap."""

    residuals: Tuple[complex, ...]
    knot_condition: bool
    preimage_wrap: str
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals)

    @property
    def ok(self) -> bool:
        return bool(self.knot_condition and self.max_residual <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "residuals": [[r.real, r.imag] for r in self.residuals],
            "max_residual": self.max_residual,
            "knot_condition": self.knot_condition,
            "preimage_wrap": self.preimage_wrap,
            "ok": self.ok,
        }


def make_preimage(partitions: PartitionSet, z: Sequence[complex]) -> Spline:
    """Complex degree-n spline over mu restricted to the curve domain."""
    coeffs = np.asarray(z, dtype=complex)
    if coeffs.size != partitions.p + 1:
        raise ShapeMismatch(
            f"{partitions.mode.value} degree-{partitions.n} preimage needs {partitions.p + 1} coefficients, got {coeffs.size}"
        )
    return Spline(partitions.n, partitions.mu, coeffs, partitions.domain)


def _resolve_partitions(z: Spline, mode: Mode, partitions: Optional[PartitionSet]) -> PartitionSet:
    if partitions is None:
        return derive_partitions(z.kv, z.degree, mode)
    if partitions.n != z.degree or not np.array_equal(partitions.mu.flat, z.kv.flat):
        raise ModeMismatch("preimage knots or degree do not match the partitions")
    return partitions


def hodograph_coefficients(z: Sequence[complex], chi: ProductTensor) -> np.ndarray:
    """p_k = sum_{i,j} chi_k^{i,j} z_i z_j."""
    zc = np.asarray(z, dtype=complex)
    return chi.contract(zc, zc)


def speed_coefficients(z: Sequence[complex], chi: ProductTensor) -> np.ndarray:
    """sigma_k = sum_{i,j} chi_k^{i,j} z_i conj(z_j); real by the symmetry of chi."""
    zc = np.asarray(z, dtype=complex)
    raw = chi.contract(zc, np.conj(zc))
    scale = 1.0 + float(np.max(np.abs(raw))) if raw.size else 1.0
    residue = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    if residue > 1e-12 * scale:
        logger.warning(json.dumps({"event": "sigma_imaginary_residue", "residue": residue}))
    return raw.real.copy()


def parametric_speed(
    z: Spline,
    mode: Mode = Mode.CLAMPED,
    partitions: Optional[PartitionSet] = None,
    chi: Optional[ProductTensor] = None,
) -> Spline:
    """sigma(t) = |z(t)|^2 as a real spline over nu."""
    parts = _resolve_partitions(z, mode, partitions)
    chi = chi if chi is not None else solve_chi(parts)
    return Spline(2 * parts.n, parts.nu, speed_coefficients(z.coeffs, chi), parts.domain)


def ph_from_preimage(
    z: Spline,
    mode: Mode = Mode.CLAMPED,
    r0: complex = 0j,
    partitions: Optional[PartitionSet] = None,
    chi: Optional[ProductTensor] = None,
) -> PHCurve:
    """
    Build the PH curve r(t) = r0 + integral of z(t)^2.

    Clamped mode uses the reduced partitions, so r(t_n) = r_0 and
    r(t_{m+1}) = r_{q+1}.
    """
    parts = _resolve_partitions(z, Mode(mode), partitions)
    coeffs = np.asarray(z.coeffs, dtype=complex)
    if not np.any(coeffs != 0):
        raise DegenerateInput("preimage is identically zero")
    chi = chi if chi is not None else solve_chi(parts)
    n = parts.n
    hodo = hodograph_coefficients(coeffs, chi)
    hodograph = Spline(2 * n, parts.nu, hodo, parts.domain)
    curve = spline_integrate(hodo, 2 * n, parts.rho, complex(r0), parts.domain)
    sigma = Spline(2 * n, parts.nu, speed_coefficients(coeffs, chi), parts.domain)
    logger.debug(
        json.dumps(
            {"event": "ph_curve_built", "mode": parts.mode.value, "n": n, "p": parts.p, "q": parts.q}
        )
    )
    return PHCurve(
        preimage=Spline(n, parts.mu, coeffs, parts.domain),
        hodograph=hodograph,
        curve=curve,
        sigma=sigma,
        partitions=parts,
        r0=complex(r0),
        chi=chi,
    )


def arc_length(ph: PHCurve) -> ArcLength:
    """Arc-length spline l(t) with l_0 = 0 and the total length of the curve."""
    parts = ph.partitions
    n = parts.n
    spline = spline_integrate(ph.sigma.coeffs, 2 * n, parts.rho, 0.0, parts.domain)
    l = spline.coeffs
    t = parts.t
    if parts.mode is Mode.CLAMPED:
        total = float(l[parts.q + 1])
    elif parts.mode is Mode.CLOSED:
        head = (n - 1) * (n + 1) + 1
        tail = parts.p * (n + 1) + 1
        basis = basis_matrix(parts.rho, 2 * n + 1, [t[n]])[0]
        total = float(
            sum((l[tail + k] - l[head + k]) * basis[head + k] for k in range(n + 1))
        )
    else:
        total = float(spline(float(t[parts.p + 1])) - spline(float(t[n])))
    return ArcLength(spline, total)


def _check_regular(parts: PartitionSet, sigma: Spline) -> None:
    lo, hi = parts.domain
    breaks = [v for v in parts.nu.values if lo <= v <= hi]
    nodes, _ = gauss_nodes(breaks, 2 * parts.n + 1)
    values = sigma.evaluate(nodes)
    scale = max(1.0, float(np.max(np.abs(values))))
    worst = int(np.argmin(values))
    if values[worst] <= numerics.regularity_tol * scale:
        raise NonRegular(
            f"parametric speed vanishes near t={nodes[worst]:.17g}; offset undefined",
            parameter=float(nodes[worst]),
        )


def offset(
    ph: PHCurve,
    sigma: Optional[Spline] = None,
    h: float = 0.0,
    zeta: Optional[ProductTensor] = None,
) -> RationalSpline:
    """
    Offset r_h(t) = r(t) + h n(t) as a rational spline over tau.

    q_k = sum_{i,j} (sigma_j r_i - i h p_j) zeta_k^{i,j},
    gamma_k = sum_{i,j} sigma_j zeta_k^{i,j}.
    """
    sigma = sigma if sigma is not None else ph.sigma
    _check_regular(ph.partitions, sigma)
    parts = ph.partitions
    zeta = zeta if zeta is not None else solve_zeta(parts)
    r = ph.curve.coeffs
    p = ph.hodograph.coeffs
    s = np.asarray(sigma.coeffs, dtype=float)
    ones = np.ones(r.size)
    gamma = zeta.contract(ones, s)
    q = zeta.contract(r, s) - 1j * h * zeta.contract(ones, p)
    deg = 4 * parts.n + 1
    return RationalSpline(
        numerator=Spline(deg, parts.tau, q, parts.domain),
        weights=Spline(deg, parts.tau, gamma, parts.domain),
        h=float(h),
    )


def offset_family(ph: PHCurve, distances: Sequence[float]) -> List[RationalSpline]:
    """Offsets for several distances sharing one zeta tensor."""
    zeta = solve_zeta(ph.partitions)
    return [offset(ph, ph.sigma, h, zeta) for h in distances]


def frame_and_curvature(z: Spline, t: float) -> Frame:
    """Unit tangent, unit normal and signed curvature 2 Im(conj(z) z') / |z|^4."""
    zt = complex(z(t))
    mag2 = abs(zt) ** 2
    if abs(zt) < 1e-14:
        raise ZeroPreimage(f"preimage vanishes at t={t}")
    dz = complex(z.derivative()(t)) if z.degree > 0 else 0j
    u, v = zt.real, zt.imag
    tangent = ((u * u - v * v) / mag2, 2.0 * u * v / mag2)
    normal = (2.0 * u * v / mag2, (v * v - u * u) / mag2)
    kappa = 2.0 * (zt.conjugate() * dz).imag / mag2**2
    return Frame(tangent, normal, float(kappa))


def bernstein_alpha(t: Sequence[float], n: int) -> float:
    """alpha = (t_n - t_{n-1}) / (t_{n+1} - t_{n-1})."""
    return float((t[n] - t[n - 1]) / (t[n + 1] - t[n - 1]))


def _bernstein(degree: int, x: float) -> np.ndarray:
    return np.array([comb(degree, k) * x**k * (1.0 - x) ** (degree - k) for k in range(degree + 1)])


def check_clamped(ph: PHCurve) -> ClampedReport:
    """
    Residuals of r(t_n) = r_0, r(t_{m+1}) = r_{q+1} and the matching tangent
    conditions p(t_n) = p_0, p(t_{m+1}) = p_q.

    Curves on reduced clamped partitions are checked by direct evaluation;
    others by the Bernstein-weighted control point sums.
    """
    parts = ph.partitions
    n, q = parts.n, parts.q
    r = ph.curve.coeffs
    p = ph.hodograph.coeffs
    t = parts.t
    lo, hi = parts.domain
    scale = 1.0 + float(np.max(np.abs(r)))
    tol = 1e-10 * scale

    if parts.mode is Mode.CLAMPED:
        return ClampedReport(
            alpha=0.0,
            beta=0.0,
            position_start=abs(complex(ph.curve(lo)) - r[0]),
            position_end=abs(complex(ph.curve(hi)) - r[q + 1]),
            tangent_start=abs(complex(ph.hodograph(lo)) - p[0]),
            tangent_end=abs(complex(ph.hodograph(hi)) - p[q]),
            tolerance=tol,
        )

    m = parts.p
    alpha = bernstein_alpha(t, n)
    beta = float((t[m + 1] - t[m]) / (t[m + 2] - t[m]))
    head = (n - 1) * (n + 1) + 1
    tail = m * (n + 1) + 1
    pos_start = _bernstein(n, alpha) @ r[head : head + n + 1] - r[0]
    tan_start = _bernstein(n - 1, alpha) @ p[head : head + n] - p[0]
    pos_end = _bernstein(n, beta) @ r[tail : tail + n + 1] - r[q + 1]
    tan_end = _bernstein(n - 1, beta) @ p[tail : tail + n] - p[q]
    return ClampedReport(alpha, beta, abs(pos_start), abs(pos_end), abs(tan_start), abs(tan_end), tol)


def closing_residuals(p: np.ndarray, parts: PartitionSet) -> np.ndarray:
    """sum_j (s_{j+2n+1} - s_j) p_j over one period, for k = 0..n."""
    n, m = parts.n, parts.m
    s = parts.nu.flat
    out = np.empty(n + 1, dtype=complex)
    for k in range(n + 1):
        j = np.arange(n * (n + 1) - k, (m + n + 1) * (n + 1) - k)
        out[k] = np.sum((s[j + 2 * n + 1] - s[j]) * p[j])
    return out


def _wrap_kind(z: np.ndarray, m: int, n: int, tol: float) -> str:
    head = z[:n]
    tail = z[m + 1 : m + 1 + n]
    if np.all(np.abs(tail - head) <= tol):
        return "periodic"
    if np.all(np.abs(tail + head) <= tol):
        return "antiperiodic"
    return "none"


def check_closed(
    z: Spline, partitions: PartitionSet, chi: Optional[ProductTensor] = None
) -> ClosedReport:
    """Closing residuals, the span mirroring t_{m+1+k} - t_{m+k} = t_k - t_{k-1}, and the preimage wrap."""
    parts = partitions
    if parts.mode is not Mode.CLOSED:
        raise ModeMismatch("check_closed needs closed-mode partitions")
    n, m = parts.n, parts.m
    chi = chi if chi is not None else solve_chi(parts)
    coeffs = np.asarray(z.coeffs, dtype=complex)
    p = hodograph_coefficients(coeffs, chi)
    residuals = closing_residuals(p, parts)

    t = parts.t
    span_scale = float(t[-1] - t[0])
    knot_ok = all(
        abs((t[m + 1 + k] - t[m + k]) - (t[k] - t[k - 1])) <= 1e-12 * span_scale
        for k in (n, n + 1)
    )
    scale = 1.0 + float(np.max(np.abs(coeffs)))
    wrap = _wrap_kind(coeffs, m, n, 1e-10 * scale)
    tol = 1e-9 * scale**2 * max(1.0, span_scale)
    report = ClosedReport(tuple(complex(r) for r in residuals), knot_ok, wrap, tol)
    logger.debug(
        json.dumps(
            {
                "event": "closed_check",
                "max_residual": report.max_residual,
                "knot_condition": knot_ok,
                "wrap": wrap,
            }
        )
    )
    return report


__all__ = [
    "PHCurve",
    "ArcLength",
    "RationalSpline",
    "Frame",
    "ClampedReport",
    "ClosedReport",
    "make_preimage",
    "hodograph_coefficients",
    "speed_coefficients",
    "parametric_speed",
    "ph_from_preimage",
    "arc_length",
    "offset",
    "offset_family",
    "frame_and_curvature",
    "bernstein_alpha",
    "check_clamped",
    "closing_residuals",
    "check_closed",
]
