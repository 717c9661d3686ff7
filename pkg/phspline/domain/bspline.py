"""
B-spline basis functions and splines with real or complex coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..common.errors import IndexOutOfRange, OutOfDomain, ShapeMismatch
from .knots import KnotVector

Scalar = Union[float, complex]


def _find_span(knots: np.ndarray, degree: int, t: float, lo_span: int, hi_span: int) -> int:
    """
    Index ``l`` in ``[lo_span, hi_span]`` with ``knots[l] <= t < knots[l + 1]``.

    At ``t == knots[hi_span + 1]`` the last non-empty span is returned, which
    gives limits from the left at the right end of the interval.
    """
    left = int(np.searchsorted(knots, t, side="right")) - 1
    left = min(max(left, lo_span), hi_span)
    while left > lo_span and knots[left] == knots[left + 1]:
        left -= 1
    return left


def basis_eval(kv: KnotVector, n: int, i: int, t: float) -> float:
    """
    Normalized B-spline N_{i,n}(t) by the Cox-de Boor recursion.

    Uses 0/0 = 0. Right-continuous, except at the last knot where the limit
    from the left is returned.
    """
    knots = kv.flat
    count = len(knots) - n - 1
    if not 0 <= i < count:
        raise IndexOutOfRange(f"basis index {i} outside 0..{count - 1}")
    if t < knots[0] or t > knots[-1]:
        return 0.0

    last = len(knots) - 1
    right_end = t == knots[-1]

    def indicator(j: int) -> float:
        if right_end:
            # Only the last non-empty span is "on" at the right end.
            return 1.0 if knots[j] < knots[j + 1] == knots[last] else 0.0
        return 1.0 if knots[j] <= t < knots[j + 1] else 0.0

    def recurse(j: int, k: int) -> float:
        if k == 0:
            return indicator(j)
        value = 0.0
        den = knots[j + k] - knots[j]
        if den > 0.0:
            value += (t - knots[j]) / den * recurse(j, k - 1)
        den = knots[j + k + 1] - knots[j + 1]
        if den > 0.0:
            value += (knots[j + k + 1] - t) / den * recurse(j + 1, k - 1)
        return value

    return float(recurse(i, n))


def _nonzero_basis(knots: np.ndarray, degree: int, span: int, t: float) -> np.ndarray:
    """Values of N_{span-degree..span}(t), the only basis functions alive on the span."""
    values = np.zeros(degree + 1)
    left = np.zeros(degree + 1)
    right = np.zeros(degree + 1)
    values[0] = 1.0
    for j in range(1, degree + 1):
        left[j] = t - knots[span + 1 - j]
        right[j] = knots[span + j] - t
        saved = 0.0
        for r in range(j):
            den = right[r + 1] + left[j - r]
            temp = values[r] / den if den != 0.0 else 0.0
            values[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        values[j] = saved
    return values


def basis_matrix(kv: KnotVector, degree: int, ts: Sequence[float]) -> np.ndarray:
    """
    Design matrix ``B[s, i] = N_{i,degree}(ts[s])`` over the whole knot range.

    Points outside the knot range give zero rows.
    """
    knots = kv.flat
    count = len(knots) - degree - 1
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.zeros((ts.size, count))
    lo_span = int(np.searchsorted(knots, knots[0], side="right")) - 1
    hi_span = len(knots) - 1
    while knots[hi_span] == knots[-1]:
        hi_span -= 1
    # End padding only feeds phantom basis functions, which are dropped.
    padded = np.concatenate([np.full(degree, knots[0]), knots, np.full(degree, knots[-1])])
    for s, t in enumerate(ts):
        if t < knots[0] or t > knots[-1]:
            continue
        span = _find_span(knots, degree, t, lo_span, hi_span)
        values = _nonzero_basis(padded, degree, span + degree, t)
        first = span - degree
        for r, value in enumerate(values):
            idx = first + r
            if 0 <= idx < count:
                out[s, idx] = value
    return out


@dataclass(frozen=True, eq=False)
class Spline:
    """
    A spline of given degree over ``kv`` with real or complex coefficients.

    Complex coefficients represent planar points u + iv. ``domain`` defaults
    to [t_degree, t_{len-degree-1}].
    """

    degree: int
    kv: KnotVector
    coeffs: np.ndarray
    domain: Tuple[float, float] = field(default=(np.nan, np.nan))

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs)
        if not np.iscomplexobj(coeffs):
            coeffs = coeffs.astype(float)
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        expected = len(self.kv) - self.degree - 1
        if self.degree < 0 or coeffs.ndim != 1 or coeffs.size != expected:
            raise ShapeMismatch(
                f"degree-{self.degree} spline on {len(self.kv)} knots needs {expected} coefficients, got {coeffs.size}"
            )
        self.kv.check_degree(self.degree)
        knots = self.kv.flat
        if np.isnan(self.domain[0]):
            object.__setattr__(
                self, "domain", (float(knots[self.degree]), float(knots[len(knots) - self.degree - 1]))
            )
        lo, hi = self.domain
        if lo not in self.kv.values or hi not in self.kv.values or not hi > lo:
            raise OutOfDomain(f"domain {self.domain} must be an increasing pair of knots")
        lo_span, hi_span = self._spans()
        if lo_span < self.degree or hi_span > expected - 1:
            raise OutOfDomain(f"domain {self.domain} is not covered by a full set of basis functions")

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.coeffs))

    def _spans(self) -> Tuple[int, int]:
        knots = self.kv.flat
        lo, hi = self.domain
        lo_span = int(np.searchsorted(knots, lo, side="right")) - 1
        hi_span = int(np.searchsorted(knots, hi, side="left")) - 1
        return lo_span, hi_span

    def __call__(self, t: float) -> Scalar:
        return spline_eval(self, t)

    def evaluate(self, ts: Sequence[float]) -> np.ndarray:
        """Vectorized evaluation through the design matrix."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        lo, hi = self.domain
        if np.any(ts < lo) or np.any(ts > hi):
            raise OutOfDomain(f"evaluation points must lie in {self.domain}")
        knots = self.kv.flat
        lo_span, hi_span = self._spans()
        out = np.zeros(ts.size, dtype=self.coeffs.dtype)
        for s, t in enumerate(ts):
            span = _find_span(knots, self.degree, t, lo_span, hi_span)
            values = _nonzero_basis(knots, self.degree, span, t)
            out[s] = values @ self.coeffs[span - self.degree : span + 1]
        return out

    def derivative(self) -> "Spline":
        return spline_derivative(self)

    def sample(self, count: int) -> Tuple[np.ndarray, np.ndarray]:
        ts = np.linspace(self.domain[0], self.domain[1], count)
        return ts, self.evaluate(ts)

    def to_dict(self) -> dict:
        if self.is_complex:
            coeffs = [[float(c.real), float(c.imag)] for c in self.coeffs]
        else:
            coeffs = [float(c) for c in self.coeffs]
        return {
            "degree": self.degree,
            "knots": [float(k) for k in self.kv.flat],
            "coeffs": coeffs,
            "domain": [self.domain[0], self.domain[1]],
        }


ComplexSpline = Spline


def spline_eval(s: Spline, t: float) -> Scalar:
    """Evaluate ``s`` at ``t`` by de Boor's algorithm."""
    lo, hi = s.domain
    if t < lo or t > hi:
        raise OutOfDomain(f"t={t} outside domain [{lo}, {hi}]")
    knots = s.kv.flat
    k = s.degree
    lo_span, hi_span = s._spans()
    span = _find_span(knots, k, t, lo_span, hi_span)
    d = [s.coeffs[j + span - k] for j in range(k + 1)]
    for r in range(1, k + 1):
        for j in range(k, r - 1, -1):
            left = knots[j + span - k]
            den = knots[j + 1 + span - r] - left
            alpha = (t - left) / den if den != 0.0 else 0.0
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j]
    value = d[k]
    return complex(value) if s.is_complex else float(value)


def spline_derivative(s: Spline) -> Spline:
    """Derivative spline of degree - 1 over the knot vector without its end knots."""
    k = s.degree
    if k < 1:
        raise ShapeMismatch("cannot differentiate a degree-0 spline")
    knots = s.kv.flat
    c = s.coeffs
    den = knots[k + 1 : k + c.size] - knots[1 : c.size]
    diff = c[1:] - c[:-1]
    coeffs = np.where(den > 0.0, k * diff / np.where(den > 0.0, den, 1.0), 0.0)
    return Spline(k - 1, KnotVector.from_flat(knots[1:-1]), coeffs, s.domain)


def spline_integrate(
    coeffs: Sequence[Scalar],
    degree: int,
    rho: KnotVector,
    r0: Scalar = 0.0,
    domain: Optional[Tuple[float, float]] = None,
) -> Spline:
    """
    Antiderivative of the degree-``degree`` spline whose knots are ``rho``
    without its first and last knot.

    r_{i+1} = r_i + (s_{i+degree+1} - s_i) / (degree + 1) * p_i with r_0 given.
    """
    p = np.asarray(coeffs)
    knots = rho.flat
    if p.ndim != 1 or p.size != len(knots) - degree - 3:
        raise ShapeMismatch(
            f"{p.size} coefficients do not fit a degree-{degree} spline inside {len(knots)} knots"
        )
    s = knots[1:-1]
    steps = (s[degree + 1 : degree + 1 + p.size] - s[: p.size]) / (degree + 1) * p
    dtype = complex if (np.iscomplexobj(p) or isinstance(r0, complex)) else float
    r = np.empty(p.size + 1, dtype=dtype)
    r[0] = r0
    r[1:] = r0 + np.cumsum(steps)
    return Spline(degree + 1, rho, r, domain) if domain is not None else Spline(degree + 1, rho, r)


__all__ = [
    "Spline",
    "ComplexSpline",
    "basis_eval",
    "basis_matrix",
    "spline_eval",
    "spline_derivative",
    "spline_integrate",
]
