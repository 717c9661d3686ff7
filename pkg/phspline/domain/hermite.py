"""
G2 Hermite interpolation with clamped quintic PH B-splines.

The preimage has degree 2 over {0, 0, 0, a, 1, 1, 1}, so four coefficients
z_0..z_3. The end tangents fix z_0 and z_3 up to sign, the end curvatures fix
v_1 and v_2 as affine functions of u_1 and u_2, and the end points leave two
real quadratic equations in (u_1, u_2): a pair of conics A and B.
"""

from __future__ import annotations

import cmath
import json
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..common.errors import AxisAlignedTangent, DegenerateInput, NonRegular, NoSolutions, ZeroTangent
from ..common.settings import numerics
from .conics import Conic, ConicKind, classify_conic, intersect_conics
from .explicit import ExplicitCase, explicit_chi, explicit_curve
from .explicit import clamped_quintic
from .knots import Mode, PartitionSet, build_mu, derive_partitions
from .ph_curve import PHCurve, frame_and_curvature, make_preimage, ph_from_preimage

logger = logging.getLogger(__name__)

_AXIS_TOL = 1e-6


class SignCase(str, Enum):
    """Signs of (z_0, z_3); (-,-) and (-,+) give the same curves."""

    PP = "PP"
    PM = "PM"

    @property
    def sign(self) -> float:
        return 1.0 if self is SignCase.PP else -1.0


def _point(value: Any) -> complex:
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    x, y = value
    return complex(float(x), float(y))


@dataclass(frozen=True)
class HermiteProblem:
    """End points, end tangents and end curvatures on [0, 1] with interior knot a."""

    p0: complex
    p1: complex
    d0: complex
    d1: complex
    kappa0: float
    kappa1: float
    a: float = 0.5

    def __post_init__(self) -> None:
        for name in ("p0", "p1", "d0", "d1"):
            object.__setattr__(self, name, _point(getattr(self, name)))
        object.__setattr__(self, "kappa0", float(self.kappa0))
        object.__setattr__(self, "kappa1", float(self.kappa1))
        object.__setattr__(self, "a", float(self.a))
        values = [self.p0, self.p1, self.d0, self.d1, self.kappa0, self.kappa1, self.a]
        if not all(np.isfinite(v) for v in values):
            raise DegenerateInput("Hermite data must be finite")
        if abs(self.d0) == 0.0 or abs(self.d1) == 0.0:
            raise ZeroTangent("end tangents must be nonzero")
        if not 0.0 < self.a < 1.0:
            raise DegenerateInput(f"interior knot a must lie in (0, 1), got {self.a}")

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.p0), abs(self.p1))

    def rotated(self, theta: float) -> "HermiteProblem":
        """Same problem with all points and tangents turned by theta about the origin."""
        turn = cmath.exp(1j * theta)
        return replace(self, p0=self.p0 * turn, p1=self.p1 * turn, d0=self.d0 * turn, d1=self.d1 * turn)

    def with_curvatures(self, kappa0: float, kappa1: float) -> "HermiteProblem":
        return replace(self, kappa0=kappa0, kappa1=kappa1)

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "HermiteProblem":
        return cls(
            p0=_point(doc["p0"]),
            p1=_point(doc["p1"]),
            d0=_point(doc["d0"]),
            d1=_point(doc["d1"]),
            kappa0=doc["k0"],
            kappa1=doc["k1"],
            a=doc.get("a", 0.5),
        )

    def to_dict(self) -> dict:
        pair = lambda c: [c.real, c.imag]  # noqa: E731
        return {
            "p0": pair(self.p0),
            "p1": pair(self.p1),
            "d0": pair(self.d0),
            "d1": pair(self.d1),
            "k0": self.kappa0,
            "k1": self.kappa1,
            "a": self.a,
        }


@dataclass(frozen=True)
class CurveQuality:
    rabs: float
    bend: float


@dataclass(frozen=True, eq=False)
class HermiteSolution:
    sign_case: SignCase
    z: np.ndarray
    curve: PHCurve
    rabs: float
    bend: float
    residuals: Tuple[float, float, float, float, float, float]
    rotation_deg: float = 0.0

    @property
    def control_points(self) -> np.ndarray:
        return self.curve.control_points

    def to_dict(self) -> dict:
        return {
            "sign_case": self.sign_case.value,
            "z": [[float(c.real), float(c.imag)] for c in self.z],
            "r": [[float(c.real), float(c.imag)] for c in self.control_points],
            "rabs": self.rabs,
            "bend": self.bend,
            "residuals": {
                "p0": self.residuals[0],
                "p1": self.residuals[1],
                "d0": self.residuals[2],
                "d1": self.residuals[3],
                "k0": self.residuals[4],
                "k1": self.residuals[5],
            },
            "rotation_deg": self.rotation_deg,
        }


def endpoint_preimage(d0: complex, d1: complex, sign_case: SignCase | str = SignCase.PP) -> Tuple[complex, complex]:
    """z_0 = |d0|^{1/2} e^{i w0/2} and z_3 = +-|d1|^{1/2} e^{i w1/2}, w_k = arg d_k."""
    d0, d1 = _point(d0), _point(d1)
    if abs(d0) == 0.0 or abs(d1) == 0.0:
        raise ZeroTangent("end tangents must be nonzero")
    sign_case = SignCase(sign_case)
    z0 = cmath.rect(math.sqrt(abs(d0)), cmath.phase(d0) / 2)
    z3 = sign_case.sign * cmath.rect(math.sqrt(abs(d1)), cmath.phase(d1) / 2)
    return z0, z3


def hermite_partitions(a: float) -> PartitionSet:
    """Clamped quintic partitions over {0, 0, 0, a, 1, 1, 1}."""
    return derive_partitions(build_mu(2, [a], Mode.CLAMPED, (0.0, 1.0)), 2, Mode.CLAMPED)


def _telescope(case: ExplicitCase) -> Tuple[np.ndarray, float, float]:
    """
    Quadratic form C with r_{q} - r_1 = z^T C z, and the first and last span
    weights: r_1 = r_0 + w_0 d0 / 5, r_{q+1} = r_q + w_q d1 / 5.
    """
    chi = explicit_chi(case).values
    weights = clamped_quintic.span_weights(case)
    q = case.partitions.q
    form = np.einsum("k,ijk->ij", weights[1:q] / 5.0, chi[:, :, 1:q])
    return form, float(weights[0]), float(weights[q])


def _inner_coefficients(
    problem: HermiteProblem, z0: complex, z3: complex
) -> Tuple[complex, complex, complex, complex]:
    """z_1 = u_1 s_1 + t_1 and z_2 = u_2 s_2 + t_2 once v_1, v_2 are eliminated."""
    a = problem.a
    u0, u3 = z0.real, z3.real
    c0 = a / 4.0 * problem.kappa0 * abs(z0) ** 4
    c3 = (1.0 - a) / 4.0 * problem.kappa1 * abs(z3) ** 4
    return z0 / u0, 1j * c0 / u0, z3 / u3, -1j * c3 / u3


def build_conics(problem: HermiteProblem, z0: complex, z3: complex) -> Tuple[Conic, Conic]:
    """
    Real and imaginary parts of r_{q}(z) - r_1 = p1 - p0 - (w_q d1 + w_0 d0) / 5
    as conics A and B in (u_1, u_2).
    """
    if abs(z0.real) <= _AXIS_TOL * abs(z0) or abs(z3.real) <= _AXIS_TOL * abs(z3):
        raise AxisAlignedTangent("Re z_0 or Re z_3 vanishes; rotate the data first")
    case = ExplicitCase.from_partitions(hermite_partitions(problem.a))
    form, w_first, w_last = _telescope(case)
    s1, t1, s2, t2 = _inner_coefficients(problem, z0, z3)
    lift = np.array(
        [
            [z0, 0.0, 0.0],
            [t1, s1, 0.0],
            [t2, 0.0, s2],
            [z3, 0.0, 0.0],
        ],
        dtype=complex,
    )
    m = lift.T @ form @ lift
    target = problem.p1 - problem.p0 - (w_last * problem.d1 + w_first * problem.d0) / 5.0
    m[0, 0] -= target
    A, B = Conic(m.real), Conic(m.imag)
    logger.debug(
        json.dumps(
            {
                "event": "hermite_conics",
                "a": problem.a,
                "A": A.matrix.tolist(),
                "B": B.matrix.tolist(),
            }
        )
    )
    return A, B


def _rotation_angle(z0: complex, z3: complex) -> float:
    """Smallest configured angle (radians) after which Re z_0 and Re z_3 are clear of zero."""
    for deg in numerics.rotation_angles:
        half = cmath.exp(1j * math.radians(deg) / 2)
        if abs((z0 * half).real) >= _AXIS_TOL * abs(z0) and abs((z3 * half).real) >= _AXIS_TOL * abs(z3):
            return math.radians(deg)
    raise AxisAlignedTangent("no configured rotation moves the end tangents off the axis")


def _oriented(problem: HermiteProblem, sign_case: SignCase, rotation: Optional[float]):
    z0, z3 = endpoint_preimage(problem.d0, problem.d1, sign_case)
    theta = _rotation_angle(z0, z3) if rotation is None else math.radians(rotation)
    half = cmath.exp(1j * theta / 2)
    return theta, half, problem.rotated(theta), z0 * half, z3 * half


def curve_quality(ph: PHCurve) -> CurveQuality:
    """
    Absolute rotation index (1/2pi) int |kappa| sigma dt and bending energy
    int kappa^2 sigma dt, integrated span by span.
    """
    z = ph.preimage
    dz = z.derivative()
    scale = max(1.0, float(np.max(np.abs(z.coeffs))) ** 2)
    tol = numerics.regularity_tol * scale

    def turn(t: float) -> Tuple[float, float]:
        zt = complex(z(t))
        mag2 = abs(zt) ** 2
        if mag2 <= tol:
            raise NonRegular(f"parametric speed vanishes near t={t:.17g}", parameter=float(t))
        return (zt.conjugate() * complex(dz(t))).imag, mag2

    def rotation_density(t: float) -> float:
        im, mag2 = turn(t)
        return abs(2.0 * im / mag2)

    def bending_density(t: float) -> float:
        im, mag2 = turn(t)
        return 4.0 * im * im / mag2**3

    lo, hi = ph.domain
    breaks = [v for v in ph.partitions.mu.values if lo <= v <= hi]
    rabs = bend = 0.0
    for left, right in zip(breaks[:-1], breaks[1:]):
        kw = dict(epsabs=1e-14, epsrel=numerics.quality_tol, limit=200)
        rabs += integrate.quad(rotation_density, left, right, **kw)[0]
        bend += integrate.quad(bending_density, left, right, **kw)[0]
    return CurveQuality(rabs / (2.0 * math.pi), bend)


def _residuals(ph: PHCurve, problem: HermiteProblem) -> Tuple[float, float, float, float, float, float]:
    return (
        abs(ph(0.0) - problem.p0),
        abs(ph(1.0) - problem.p1),
        abs(complex(ph.hodograph(0.0)) - problem.d0),
        abs(complex(ph.hodograph(1.0)) - problem.d1),
        abs(frame_and_curvature(ph.preimage, 0.0).kappa - problem.kappa0),
        abs(frame_and_curvature(ph.preimage, 1.0).kappa - problem.kappa1),
    )


def _within_tolerance(res: Sequence[float], problem: HermiteProblem) -> bool:
    scale = max(problem.scale, abs(problem.d0), abs(problem.d1))
    return (
        max(res[:4]) <= 1e-8 * scale
        and res[4] <= 1e-6 * (1.0 + abs(problem.kappa0))
        and res[5] <= 1e-6 * (1.0 + abs(problem.kappa1))
    )


def _solve_case(problem: HermiteProblem, sign_case: SignCase, rotation: Optional[float]) -> List[HermiteSolution]:
    theta, half, turned, rz0, rz3 = _oriented(problem, sign_case, rotation)
    A, B = build_conics(turned, rz0, rz3)
    points = intersect_conics(A, B)
    s1, t1, s2, t2 = _inner_coefficients(turned, rz0, rz3)

    parts = hermite_partitions(problem.a)
    case = ExplicitCase.from_partitions(parts)
    chi = explicit_chi(case)
    out: List[HermiteSolution] = []
    for u1, u2 in points:
        z = np.array([rz0, u1 * s1 + t1, u2 * s2 + t2, rz3], dtype=complex) / half
        built = explicit_curve(case, z, r0=problem.p0)
        ph = ph_from_preimage(make_preimage(parts, z), Mode.CLAMPED, r0=problem.p0, partitions=parts, chi=chi)
        if not np.allclose(built.r, ph.control_points, rtol=1e-9, atol=1e-9 * problem.scale):
            logger.warning(json.dumps({"event": "hermite_engine_mismatch", "sign_case": sign_case.value}))
        res = _residuals(ph, problem)
        if not _within_tolerance(res, problem):
            logger.warning(
                json.dumps({"event": "hermite_solution_rejected", "sign_case": sign_case.value, "residuals": res})
            )
            continue
        quality = curve_quality(ph)
        out.append(
            HermiteSolution(
                sign_case=sign_case,
                z=z,
                curve=ph,
                rabs=quality.rabs,
                bend=quality.bend,
                residuals=res,
                rotation_deg=math.degrees(theta),
            )
        )
    logger.debug(
        json.dumps(
            {
                "event": "hermite_case_solved",
                "sign_case": sign_case.value,
                "rotation_deg": math.degrees(theta),
                "intersections": len(points),
                "solutions": len(out),
            }
        )
    )
    return out


def solve_hermite(problem: HermiteProblem, rotation: Optional[float] = None) -> List[HermiteSolution]:
    """
    All interpolants for both sign cases, sorted by (rabs, bend).

    ``rotation`` forces the working rotation in degrees; by default the
    smallest configured angle that keeps Re z_0 and Re z_3 away from zero.
    """
    solutions: List[HermiteSolution] = []
    for sign_case in SignCase:
        solutions.extend(_solve_case(problem, sign_case, rotation))
    if not solutions:
        report = {
            case.value: feasibility(problem, case).describe(problem.kappa0, problem.kappa1)
            for case in SignCase
        }
        raise NoSolutions("the conics have no real common point for either sign case", report=report)
    solutions.sort(key=lambda s: (s.rabs, s.bend))
    return solutions


@dataclass(frozen=True, eq=False)
class FeasibilityReport:
    """
    Conic types of the Hermite system as functions of the end curvatures.

    I2 does not depend on the curvatures; I1 is reported before the
    m_00 >= 0 normalization. I3 is a quadratic form in (1, kappa0, kappa1).
    """

    problem: HermiteProblem
    sign_case: SignCase
    rotation_deg: float
    z0: complex
    z3: complex
    i3_forms: Dict[str, np.ndarray]
    box: Optional[Tuple[float, float, float, float]] = None
    samples: int = 200

    def conics(self, kappa0: float, kappa1: float) -> Tuple[Conic, Conic]:
        turned = self.problem.with_curvatures(kappa0, kappa1).rotated(math.radians(self.rotation_deg))
        return build_conics(turned, self.z0, self.z3)

    def kinds(self, kappa0: float, kappa1: float) -> Dict[str, ConicKind]:
        A, B = self.conics(kappa0, kappa1)
        return {"A": classify_conic(A), "B": classify_conic(B)}

    def is_feasible(self, kappa0: float, kappa1: float) -> bool:
        """False when A or B is an imaginary conic, imaginary line pair or imaginary parallel pair."""
        return not any(kind.is_imaginary for kind in self.kinds(kappa0, kappa1).values())

    def i3(self, kappa0: float, kappa1: float) -> Dict[str, float]:
        x = np.array([1.0, kappa0, kappa1])
        return {name: float(x @ form @ x) for name, form in self.i3_forms.items()}

    @property
    def quadratic_invariants(self) -> Dict[str, Dict[str, float]]:
        out = {}
        for name, conic in zip(("A", "B"), self.conics(0.0, 0.0)):
            mat = conic.matrix
            out[name] = {
                "I1": float(mat[1, 1] + mat[2, 2]),
                "I2": float(mat[1, 1] * mat[2, 2] - mat[1, 2] ** 2),
            }
        return out

    def boundary(self, name: str = "A") -> List[Tuple[float, float]]:
        """Points of I3 = 0 on the sampled kappa box, by solving for kappa1 along kappa0."""
        if self.box is None:
            return []
        k0min, k0max, k1min, k1max = self.box
        form = self.i3_forms[name]
        points: List[Tuple[float, float]] = []
        for k0 in np.linspace(k0min, k0max, self.samples):
            c2 = form[2, 2]
            c1 = 2.0 * (form[0, 2] + form[1, 2] * k0)
            c0 = form[0, 0] + 2.0 * form[0, 1] * k0 + form[1, 1] * k0 * k0
            if abs(c2) > 1e-14 * max(abs(c1), abs(c0), 1e-300):
                roots = np.roots([c2, c1, c0])
                roots = [r.real for r in roots if abs(r.imag) <= 1e-12 * max(1.0, abs(r))]
            elif c1 != 0.0:
                roots = [-c0 / c1]
            else:
                roots = []
            points.extend((float(k0), float(k1)) for k1 in sorted(roots) if k1min <= k1 <= k1max)
        return points

    def describe(self, kappa0: Optional[float] = None, kappa1: Optional[float] = None) -> dict:
        doc: Dict[str, Any] = {
            "sign_case": self.sign_case.value,
            "a": self.problem.a,
            "rotation_deg": self.rotation_deg,
            "invariants": self.quadratic_invariants,
            "i3_zero_set": {name: classify_conic(Conic(form)).value for name, form in self.i3_forms.items()},
        }
        if kappa0 is not None and kappa1 is not None:
            kinds = self.kinds(kappa0, kappa1)
            doc["kappa"] = [kappa0, kappa1]
            doc["kinds"] = {name: kind.value for name, kind in kinds.items()}
            doc["i3"] = self.i3(kappa0, kappa1)
            doc["imaginary"] = [name for name, kind in kinds.items() if kind.is_imaginary]
            doc["feasible"] = not doc["imaginary"]
        if self.box is not None:
            doc["box"] = list(self.box)
            doc["boundary"] = [list(pt) for pt in self.boundary("A")]
        return doc


def _fit_quadratic(values: Dict[Tuple[int, int], float]) -> np.ndarray:
    """Symmetric K with f(k0, k1) = (1, k0, k1) K (1, k0, k1)^T from six samples."""
    f00 = values[(0, 0)]
    k11 = (values[(1, 0)] + values[(-1, 0)]) / 2.0 - f00
    k22 = (values[(0, 1)] + values[(0, -1)]) / 2.0 - f00
    k01 = (values[(1, 0)] - values[(-1, 0)]) / 4.0
    k02 = (values[(0, 1)] - values[(0, -1)]) / 4.0
    k12 = (values[(1, 1)] - f00 - 2 * k01 - 2 * k02 - k11 - k22) / 2.0
    return np.array([[f00, k01, k02], [k01, k11, k12], [k02, k12, k22]])


def feasibility(
    problem: HermiteProblem,
    sign_case: SignCase | str = SignCase.PP,
    box: Optional[Sequence[float]] = None,
    samples: int = 200,
) -> FeasibilityReport:
    """Feasibility analysis for the data of ``problem``; its curvatures are ignored."""
    sign_case = SignCase(sign_case)
    theta, _, _, z0, z3 = _oriented(problem, sign_case, None)
    report = FeasibilityReport(
        problem=problem,
        sign_case=sign_case,
        rotation_deg=math.degrees(theta),
        z0=z0,
        z3=z3,
        i3_forms={},
        box=tuple(float(v) for v in box) if box is not None else None,  # type: ignore[arg-type]
        samples=samples,
    )
    grid = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)]
    samples_a: Dict[Tuple[int, int], float] = {}
    samples_b: Dict[Tuple[int, int], float] = {}
    for k0, k1 in grid:
        A, B = report.conics(float(k0), float(k1))
        samples_a[(k0, k1)] = float(np.linalg.det(A.matrix))
        samples_b[(k0, k1)] = float(np.linalg.det(B.matrix))
    report.i3_forms.update({"A": _fit_quadratic(samples_a), "B": _fit_quadratic(samples_b)})
    return report


def cubic_reference_curvatures(p0: Any, p1: Any, d0: Any, d1: Any) -> Tuple[float, float]:
    """End curvatures of the cubic c with c(0)=p0, c(1)=p1, c'(0)=d0, c'(1)=d1."""
    p0, p1, d0, d1 = (_point(v) for v in (p0, p1, d0, d1))
    if abs(d0) == 0.0 or abs(d1) == 0.0:
        raise ZeroTangent("end tangents must be nonzero")
    chord = p1 - p0
    acc0 = 6.0 * chord - 4.0 * d0 - 2.0 * d1
    acc1 = -6.0 * chord + 2.0 * d0 + 4.0 * d1
    cross = lambda u, v: (u.conjugate() * v).imag  # noqa: E731
    return cross(d0, acc0) / abs(d0) ** 3, cross(d1, acc1) / abs(d1) ** 3


__all__ = [
    "SignCase",
    "HermiteProblem",
    "HermiteSolution",
    "CurveQuality",
    "FeasibilityReport",
    "endpoint_preimage",
    "hermite_partitions",
    "build_conics",
    "curve_quality",
    "solve_hermite",
    "feasibility",
    "cubic_reference_curvatures",
]
