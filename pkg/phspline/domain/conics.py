"""
Real conics in the (u1, u2) plane and their intersection through the pencil
A - lambda B.

A conic is the symmetric matrix M acting on x = (1, u1, u2): x^T M x = 0.
"""

from __future__ import annotations

import cmath
import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import IdenticalConics, ShapeMismatch, SplitFailure
from ..common.settings import numerics

logger = logging.getLogger(__name__)

_ZERO_TOL = 1e-12

Point = Tuple[float, float]


class ConicKind(str, Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"
    IMAGINARY_CONIC = "imaginary-conic"
    REAL_LINE_PAIR = "real-line-pair"
    IMAGINARY_LINE_PAIR = "imaginary-line-pair"
    PARALLEL_REAL_LINES = "parallel-real-lines"
    PARALLEL_IMAGINARY_LINES = "parallel-imaginary-lines"
    DOUBLE_LINE = "double-line"
    # no quadratic part left: a single line, or no equation at all
    LINE = "line"
    TRIVIAL = "trivial"

    @property
    def is_imaginary(self) -> bool:
        return self in (
            ConicKind.IMAGINARY_CONIC,
            ConicKind.IMAGINARY_LINE_PAIR,
            ConicKind.PARALLEL_IMAGINARY_LINES,
        )


@dataclass(frozen=True, eq=False)
class Conic:
    """Symmetric 3x3 matrix of a conic over (1, u1, u2)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=float)
        if mat.shape != (3, 3):
            raise ShapeMismatch(f"conic matrix must be 3x3, got {mat.shape}")
        mat = 0.5 * (mat + mat.T)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_coefficients(
        cls, c00: float, c01: float, c02: float, c11: float, c12: float, c22: float
    ) -> "Conic":
        """c00 + 2 c01 u1 + 2 c02 u2 + c11 u1^2 + 2 c12 u1 u2 + c22 u2^2 = 0."""
        return cls(np.array([[c00, c01, c02], [c01, c11, c12], [c02, c12, c22]]))

    @property
    def normalized(self) -> np.ndarray:
        """The matrix with m_00 >= 0."""
        return -self.matrix if self.matrix[0, 0] < 0 else self.matrix

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    @property
    def invariants(self) -> Tuple[float, float, float]:
        """I1 = m11 + m22, I2 = det of the quadratic block, I3 = det M (after normalization)."""
        mat = self.normalized
        i1 = float(mat[1, 1] + mat[2, 2])
        i2 = float(mat[1, 1] * mat[2, 2] - mat[1, 2] ** 2)
        i3 = float(np.linalg.det(mat))
        return i1, i2, i3

    @property
    def rank(self) -> int:
        s = np.linalg.svd(self.matrix, compute_uv=False)
        if s[0] == 0.0:
            return 0
        return int(np.sum(s > _ZERO_TOL * s[0]))

    def value(self, u1: float, u2: float) -> float:
        x = np.array([1.0, u1, u2])
        return float(x @ self.matrix @ x)

    def to_dict(self) -> dict:
        i1, i2, i3 = self.invariants
        return {
            "matrix": [[float(v) for v in row] for row in self.matrix],
            "I1": i1,
            "I2": i2,
            "I3": i3,
            "kind": classify_conic(self).value,
        }


def classify_conic(conic: Conic) -> ConicKind:
    """Type of the conic from the signs of I1, I2, I3 and the rank of M."""
    scale = conic.scale
    if scale == 0.0:
        return ConicKind.TRIVIAL
    i1, i2, i3 = conic.invariants
    zero3 = abs(i3) <= _ZERO_TOL * scale**3
    zero2 = abs(i2) <= _ZERO_TOL * scale**2
    zero1 = abs(i1) <= _ZERO_TOL * scale

    if not zero3:
        if zero2:
            kind = ConicKind.PARABOLA
        elif i2 < 0:
            kind = ConicKind.HYPERBOLA
        else:
            kind = ConicKind.ELLIPSE if i1 * i3 < 0 else ConicKind.IMAGINARY_CONIC
    elif not zero2:
        kind = ConicKind.REAL_LINE_PAIR if i2 < 0 else ConicKind.IMAGINARY_LINE_PAIR
    else:
        rank = conic.rank
        if rank <= 1:
            kind = ConicKind.DOUBLE_LINE if not zero1 else ConicKind.LINE
        elif zero1:
            kind = ConicKind.LINE
        else:
            kind = ConicKind.PARALLEL_REAL_LINES if i1 < 0 else ConicKind.PARALLEL_IMAGINARY_LINES
    logger.debug(json.dumps({"event": "conic_classified", "kind": kind.value, "I1": i1, "I2": i2, "I3": i3}))
    return kind


def _as_matrix(conic: Conic | np.ndarray) -> np.ndarray:
    return conic.matrix if isinstance(conic, Conic) else np.asarray(conic, dtype=float)


def _replace_column(target: np.ndarray, source: np.ndarray, k: int) -> np.ndarray:
    out = target.copy()
    out[:, k] = source[:, k]
    return out


def pencil_coefficients(A: Conic | np.ndarray, B: Conic | np.ndarray) -> np.ndarray:
    """
    Coefficients (c0, c1, c2, c3) of det(A - lambda B) = c0 + c1 lambda + c2 lambda^2 + c3 lambda^3.

    A_k is A with its k-th column taken from B, B_k is B with its k-th column
    taken from A.
    """
    a, b = _as_matrix(A), _as_matrix(B)
    det = np.linalg.det
    c3 = -det(b)
    c2 = sum(det(_replace_column(b, a, k)) for k in range(3))
    c1 = -sum(det(_replace_column(a, b, k)) for k in range(3))
    c0 = det(a)
    return np.array([c0, c1, c2, c3], dtype=float)


def _cardano(c: np.ndarray) -> List[complex]:
    """Complex roots of c0 + c1 x + c2 x^2 + c3 x^3 with c3 != 0."""
    c0, c1, c2, c3 = (complex(v) for v in c)
    b, cc, d = c2 / c3, c1 / c3, c0 / c3
    shift = -b / 3
    p = cc - b * b / 3
    q = 2 * b**3 / 27 - b * cc / 3 + d
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    inner = -q / 2 + disc
    if abs(inner) < abs(-q / 2 - disc):
        inner = -q / 2 - disc
    if abs(inner) == 0.0:
        return [complex(shift)] * 3
    root = inner ** (1.0 / 3.0)
    omega = complex(-0.5, np.sqrt(3) / 2)
    out = []
    for k in range(3):
        w = root * omega**k
        out.append(w - p / (3 * w) + shift)
    return out


def _polish(c: np.ndarray, x: complex) -> complex:
    poly = np.polynomial.Polynomial(c)
    dpoly = poly.deriv()
    slope = dpoly(x)
    if slope != 0:
        x = x - poly(x) / slope
    return x


def _merge(values: Sequence[float], tol: float) -> List[float]:
    out: List[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > tol * max(1.0, abs(v)):
            out.append(v)
    return out


def pencil_degenerate_lambdas(A: Conic | np.ndarray, B: Conic | np.ndarray) -> List[float]:
    """
    Distinct real lambda with det(A - lambda B) = 0, ascending.

    Cardano with one Newton polish per root; a vanishing leading coefficient
    drops to the quadratic or linear case.
    """
    c = pencil_coefficients(A, B)
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise IdenticalConics("det(A - lambda B) vanishes identically")
    tol = numerics.real_root_tol
    if abs(c[3]) > _ZERO_TOL * scale:
        roots = [_polish(c, r) for r in _cardano(c)]
        realest = min(roots, key=lambda r: abs(r.imag))
        real = [r.real for r in roots if abs(r.imag) <= tol * max(1.0, abs(r))]
        if not real:
            real = [realest.real]
    elif abs(c[2]) > _ZERO_TOL * scale:
        roots = np.roots([c[2], c[1], c[0]])
        real = [float(r.real) for r in roots if abs(r.imag) <= tol * max(1.0, abs(r))]
    elif abs(c[1]) > _ZERO_TOL * scale:
        real = [-c[0] / c[1]]
    else:
        real = []
    lambdas = _merge(real, 1e-7)
    logger.debug(json.dumps({"event": "pencil_roots", "coefficients": c.tolist(), "lambdas": lambdas}))
    return lambdas


def _adjugate(q: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(q, i, axis=0), j, axis=1)
            out[j, i] = (-1) ** (i + j) * np.linalg.det(minor)
    return out


def _cross_matrix(p: np.ndarray) -> np.ndarray:
    return np.array([[0.0, p[2], -p[1]], [-p[2], 0.0, p[0]], [p[1], -p[0], 0.0]])


def _split_degenerate(q: np.ndarray) -> Tuple[List[np.ndarray], Optional[np.ndarray]]:
    """
    Lines (l0, l1, l2) with l0 + l1 u1 + l2 u2 = 0 making up the degenerate conic q.

    Returns (lines, vertex); an imaginary line pair yields no lines but its
    real vertex in homogeneous coordinates.
    """
    qscale = float(np.max(np.abs(q)))
    if qscale == 0.0:
        return [], None
    adj = _adjugate(q)
    if float(np.max(np.abs(adj))) <= 1e-10 * qscale**2:
        j = int(np.argmax(np.abs(np.diag(q))))
        if q[j, j] == 0.0:
            return [], None
        return [q[:, j] / np.sqrt(abs(q[j, j]))], None
    i = int(np.argmax(np.abs(np.diag(adj))))
    if adj[i, i] > 0:
        return [], adj[:, i]
    beta = np.sqrt(-adj[i, i])
    c = q + _cross_matrix(adj[:, i] / beta)
    r, s = np.unravel_index(int(np.argmax(np.abs(c))), c.shape)
    return [c[r, :], c[:, s]], None


def _line_points(line: np.ndarray, conic: np.ndarray, tol: float) -> Optional[List[np.ndarray]]:
    """Real points of ``line`` on ``conic``; None when the line lies inside it."""
    l0, l1, l2 = (float(v) for v in line)
    norm2 = l1 * l1 + l2 * l2
    if norm2 <= _ZERO_TOL**2 * max(1.0, l0 * l0):
        return []
    base = np.array([1.0, -l0 * l1 / norm2, -l0 * l2 / norm2])
    direction = np.array([0.0, -l2, l1]) / np.sqrt(norm2)
    a2 = float(direction @ conic @ direction)
    a1 = float(2.0 * base @ conic @ direction)
    a0 = float(base @ conic @ base)
    size = max(abs(a2), abs(a1), abs(a0))
    cscale = float(np.max(np.abs(conic)))
    if size <= _ZERO_TOL * max(cscale, 1e-300) * float(base @ base):
        return None
    if abs(a2) <= _ZERO_TOL * size:
        if abs(a1) <= _ZERO_TOL * size:
            return []
        params = [-a0 / a1]
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < -tol * a1 * a1 - tol * abs(4.0 * a2 * a0):
            return []
        root = np.sqrt(max(disc, 0.0))
        params = [(-a1 - root) / (2.0 * a2), (-a1 + root) / (2.0 * a2)]
    return [base + s * direction for s in params]


def _residual(conic: np.ndarray, x: np.ndarray) -> float:
    return abs(float(x @ conic @ x)) / (max(1.0, float(np.max(np.abs(conic)))) * float(x @ x))


def _refine(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """A few Newton steps on (x^T A x, x^T B x) = 0; tangential points keep the best iterate."""
    best = x
    best_res = max(_residual(a, x), _residual(b, x))
    for _ in range(4):
        f = np.array([x @ a @ x, x @ b @ x])
        jac = 2.0 * np.array([(a @ x)[1:], (b @ x)[1:]])
        if abs(np.linalg.det(jac)) <= 1e-14 * max(1.0, float(np.max(np.abs(jac)))) ** 2:
            break
        step = np.linalg.solve(jac, -f)
        x = x + np.concatenate([[0.0], step])
        res = max(_residual(a, x), _residual(b, x))
        if res < best_res:
            best, best_res = x, res
    return best


def _dedup(points: Sequence[np.ndarray], tol: float) -> List[np.ndarray]:
    out: List[np.ndarray] = []
    for x in points:
        scale = max(1.0, float(np.max(np.abs(x[1:]))))
        if all(float(np.max(np.abs(x[1:] - y[1:]))) > tol * scale for y in out):
            out.append(x)
    return out


def intersect_conics(A: Conic | np.ndarray, B: Conic | np.ndarray) -> List[Point]:
    """
    Real common points of two conics, sorted by (u1, u2).

    Every real degenerate member of the pencil is split into lines; each line
    is cut with A or B and the points found are verified on both conics.
    An empty list means the conics have no real intersection.
    """
    a, b = _as_matrix(A), _as_matrix(B)
    va, vb = a.ravel(), b.ravel()
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise IdenticalConics("a conic with a zero matrix imposes no condition")
    sv = np.linalg.svd(np.stack([va / na, vb / nb]), compute_uv=False)
    if sv[1] <= _ZERO_TOL * sv[0]:
        raise IdenticalConics("the conics are proportional")

    on_tol = numerics.on_conic_tol
    found: List[np.ndarray] = []
    split_any = False
    members = [a - lam * b for lam in pencil_degenerate_lambdas(a, b)]
    coeffs = pencil_coefficients(a, b)
    if abs(coeffs[3]) <= _ZERO_TOL * float(np.max(np.abs(coeffs))):
        # B itself is the member at lambda = infinity
        members.append(b)
    for q in members:
        lines, vertex = _split_degenerate(q)
        if vertex is not None:
            split_any = True
            if abs(vertex[0]) > _ZERO_TOL * float(np.max(np.abs(vertex))):
                x = vertex / vertex[0]
                x = _refine(a, b, x)
                if _residual(a, x) <= on_tol and _residual(b, x) <= on_tol:
                    found.append(x)
            continue
        if not lines:
            continue
        split_any = True
        for line in lines:
            candidates = None
            for target in (b, a):
                candidates = _line_points(line, target, on_tol)
                if candidates is not None:
                    break
            for x in candidates or []:
                x = _refine(a, b, x)
                if _residual(a, x) <= on_tol and _residual(b, x) <= on_tol:
                    found.append(x)
    if not split_any:
        raise SplitFailure("no degenerate member of the pencil could be split into lines")
    points = _dedup(found, numerics.dedup_tol)
    result = sorted((float(x[1]), float(x[2])) for x in points)
    logger.debug(json.dumps({"event": "conics_intersected", "count": len(result)}))
    return result


__all__ = [
    "ConicKind",
    "Conic",
    "classify_conic",
    "pencil_coefficients",
    "pencil_degenerate_lambdas",
    "intersect_conics",
]
