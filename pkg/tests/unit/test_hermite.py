import cmath
import math

import numpy as np
import pytest

from phspline.common.errors import AxisAlignedTangent, DegenerateInput, ZeroTangent
from phspline.domain.explicit import explicit_curve
from phspline.domain.hermite import (
    HermiteProblem,
    SignCase,
    build_conics,
    cubic_reference_curvatures,
    curve_quality,
    endpoint_preimage,
    feasibility,
    hermite_partitions,
)
from phspline.domain.knots import Mode
from phspline.domain.ph_curve import frame_and_curvature, make_preimage, ph_from_preimage


@pytest.fixture
def problem() -> HermiteProblem:
    return HermiteProblem(p0=0.5 - 0.2j, p1=3.0 + 1.0j, d0=2.0 + 1.0j, d1=1.0 - 2.0j, kappa0=0.8, kappa1=-0.4, a=0.4)


def inner_preimage(problem: HermiteProblem, z0: complex, z3: complex, u1: float, u2: float) -> np.ndarray:
    a = problem.a
    c0 = a / 4 * problem.kappa0 * abs(z0) ** 4
    c3 = (1 - a) / 4 * problem.kappa1 * abs(z3) ** 4
    z1 = u1 * z0 / z0.real + 1j * c0 / z0.real
    z2 = u2 * z3 / z3.real - 1j * c3 / z3.real
    return np.array([z0, z1, z2, z3])


def test_endpoint_preimage_examples():
    z0, z3 = endpoint_preimage(1 + 0j, 1 + 0j, SignCase.PP)
    assert z0 == pytest.approx(1.0)
    z0, _ = endpoint_preimage(4j, 1 + 0j)
    assert z0 == pytest.approx(math.sqrt(2) * (1 + 1j))
    assert z0**2 == pytest.approx(4j)
    _, z3_plus = endpoint_preimage(1 + 0j, 2 + 3j, "PP")
    _, z3_minus = endpoint_preimage(1 + 0j, 2 + 3j, "PM")
    assert z3_minus == pytest.approx(-z3_plus)


def test_endpoint_preimages_square_to_tangents(rng):
    for _ in range(100):
        d0, d1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        for case in SignCase:
            z0, z3 = endpoint_preimage(d0, d1, case)
            assert abs(z0**2 - d0) <= 1e-12 * (1 + abs(d0))
            assert abs(z3**2 - d1) <= 1e-12 * (1 + abs(d1))
            assert z0.real >= 0.0 or abs(z0.real) <= 1e-15


def test_endpoint_preimage_needs_tangents():
    with pytest.raises(ZeroTangent):
        endpoint_preimage(0j, 1 + 0j)


def test_problem_validation():
    with pytest.raises(ZeroTangent):
        HermiteProblem(0j, 1 + 0j, 0j, 1 + 0j, 0.0, 0.0)
    with pytest.raises(DegenerateInput):
        HermiteProblem(0j, 1 + 0j, 1 + 0j, 1 + 0j, 0.0, 0.0, a=1.0)
    with pytest.raises(DegenerateInput):
        HermiteProblem(0j, 1 + 0j, 1 + 0j, 1 + 0j, float("nan"), 0.0)


def test_problem_dict_round_trip(problem):
    doc = problem.to_dict()
    assert doc["d0"] == [2.0, 1.0]
    assert doc["k1"] == -0.4
    assert HermiteProblem.from_dict(doc) == problem


def test_rotation_turns_points_and_tangents(problem):
    turned = problem.rotated(math.pi / 2)
    assert turned.p0 == pytest.approx(problem.p0 * 1j)
    assert turned.d1 == pytest.approx(problem.d1 * 1j)
    assert turned.kappa0 == problem.kappa0


def test_hermite_partitions_shape():
    parts = hermite_partitions(0.3)
    assert parts.mode is Mode.CLAMPED
    assert parts.t.tolist() == [0.0, 0.0, 0.0, 0.3, 1.0, 1.0, 1.0]
    assert (parts.p, parts.q) == (3, 7)


def test_conic_entries_match_closed_forms(problem):
    z0, z3 = endpoint_preimage(problem.d0, problem.d1)
    A, B = build_conics(problem, z0, z3)
    a = problem.a
    u0, v0, u3, v3 = z0.real, z0.imag, z3.real, z3.imag
    assert A.matrix[1, 1] == pytest.approx((u0**2 - v0**2) * (3 - a) / (15 * u0**2))
    assert A.matrix[1, 2] == pytest.approx((u0 * u3 - v0 * v3) / (10 * u0 * u3))
    assert A.matrix[2, 2] == pytest.approx((u3**2 - v3**2) * (2 + a) / (15 * u3**2))
    assert B.matrix[1, 1] == pytest.approx(2 * v0 * (3 - a) / (15 * u0))
    assert B.matrix[1, 2] == pytest.approx((v0 * u3 + u0 * v3) / (10 * u0 * u3))
    assert B.matrix[2, 2] == pytest.approx(2 * v3 * (2 + a) / (15 * u3))


def test_conic_constant_and_linear_entries_match_closed_forms(problem):
    z0, z3 = endpoint_preimage(problem.d0, problem.d1)
    A, B = build_conics(problem, z0, z3)
    a, k0, k1 = problem.a, problem.kappa0, problem.kappa1
    p0, p1, d0, d1 = problem.p0, problem.p1, problem.d0, problem.d1
    u0, v0, u3, v3 = z0.real, z0.imag, z3.real, z3.imag
    n0, n3 = (u0**2 + v0**2) ** 2, (u3**2 + v3**2) ** 2
    a00 = (
        p0.real
        - p1.real
        + (a * d0.real + (1 - a) * d1.real) / 5
        - k0**2 * a**2 * (3 - a) * n0**2 / (240 * u0**2)
        - k1**2 * (1 - a) ** 2 * (2 + a) * n3**2 / (240 * u3**2)
        + k0 * k1 * a * (1 - a) * n0 * n3 / (80 * u0 * u3)
        - k0 * a * n0 * (a * (4 - a) * v0 + (1 - a) ** 2 * v3) / (60 * u0)
        + k1 * (1 - a) * n3 * (a**2 * v0 + (1 - a) * (3 + a) * v3) / (60 * u3)
    )
    a01 = (
        (a * (4 - a) * (u0**2 - v0**2) + (1 - a) ** 2 * (u0 * u3 - v0 * v3)) / (3 * u0)
        - k0 * v0 * a * (3 - a) * n0 / (6 * u0**2)
        + k1 * v0 * (1 - a) * n3 / (4 * u0 * u3)
    ) / 10
    a02 = (
        k1 * v3 * (2 + a) * (1 - a) * n3 / (6 * u3**2)
        - k0 * a * v3 * n0 / (4 * u0 * u3)
        + (a**2 * (u0 * u3 - v0 * v3) + (3 + a) * (1 - a) * (u3**2 - v3**2)) / (3 * u3)
    ) / 10
    b00 = (
        p0.imag
        - p1.imag
        + (a * d0.imag + (1 - a) * d1.imag) / 5
        + k0 * a * n0 * (a * (4 - a) * u0 + (1 - a) ** 2 * u3) / (60 * u0)
        - k1 * (1 - a) * n3 * (u3 * (1 - a) * (3 + a) + u0 * a**2) / (60 * u3)
    )
    b01 = (
        k0 * a * (3 - a) * n0 / (30 * u0)
        + (1 - a) ** 2 * (u0 * v3 + u3 * v0) / (15 * u0)
        + 2 * a * v0 * (4 - a) / 15
        - k1 * (1 - a) * n3 / (20 * u3)
    ) / 2
    b02 = (
        (2 * a**2 * (u3 * v0 + u0 * v3) + 4 * u3 * v3 * (3 + a) * (1 - a) - k1 * (2 + a) * (1 - a) * n3) / (3 * u3)
        + k0 * a * n0 / (2 * u0)
    ) / 20
    assert A.matrix[0, 0] == pytest.approx(a00, rel=1e-10, abs=1e-12)
    assert A.matrix[0, 1] == pytest.approx(a01, rel=1e-10, abs=1e-12)
    assert A.matrix[0, 2] == pytest.approx(a02, rel=1e-10, abs=1e-12)
    assert B.matrix[0, 0] == pytest.approx(b00, rel=1e-10, abs=1e-12)
    assert B.matrix[0, 1] == pytest.approx(b01, rel=1e-10, abs=1e-12)
    assert B.matrix[0, 2] == pytest.approx(b02, rel=1e-10, abs=1e-12)


def test_conic_values_measure_end_point_miss(problem):
    z0, z3 = endpoint_preimage(problem.d0, problem.d1, SignCase.PM)
    A, B = build_conics(problem, z0, z3)
    parts = hermite_partitions(problem.a)
    for u1, u2 in ((0.3, -0.7), (1.5, 2.0), (-1.0, 0.2)):
        z = inner_preimage(problem, z0, z3, u1, u2)
        end = explicit_curve(parts, z, r0=problem.p0).r[-1]
        miss = end - problem.p1
        assert A.value(u1, u2) == pytest.approx(miss.real, abs=1e-11)
        assert B.value(u1, u2) == pytest.approx(miss.imag, abs=1e-11)


def test_eliminated_preimage_meets_end_curvatures(problem):
    z0, z3 = endpoint_preimage(problem.d0, problem.d1)
    parts = hermite_partitions(problem.a)
    z = make_preimage(parts, inner_preimage(problem, z0, z3, 0.9, -0.6))
    assert frame_and_curvature(z, 0.0).kappa == pytest.approx(problem.kappa0, rel=1e-10)
    assert frame_and_curvature(z, 1.0).kappa == pytest.approx(problem.kappa1, rel=1e-10)


def test_axis_aligned_preimage_is_rejected(problem):
    with pytest.raises(AxisAlignedTangent):
        build_conics(problem, 1j, 1 + 0.5j)


def test_cubic_reference_curvatures_for_symmetric_data():
    k0, k1 = cubic_reference_curvatures(0j, 1 + 0j, -3 + 1j, -3 - 1j)
    assert k0 == pytest.approx(-18 / 10**1.5)
    assert k1 == pytest.approx(k0)
    assert k0 == pytest.approx(-0.569210, abs=1e-6)


def test_cubic_reference_curvatures_vanish_for_straight_data():
    assert cubic_reference_curvatures(0j, 3 + 0j, 3 + 0j, 3 + 0j) == pytest.approx((0.0, 0.0))


def test_quality_of_straight_and_circular_curves():
    parts = hermite_partitions(0.5)
    line = ph_from_preimage(make_preimage(parts, [1.0, 1.0, 1.0, 1.0]), Mode.CLAMPED, partitions=parts)
    quality = curve_quality(line)
    assert quality.rabs == pytest.approx(0.0, abs=1e-12)
    assert quality.bend == pytest.approx(0.0, abs=1e-12)

    z = np.array([1.0, cmath.exp(0.2j), cmath.exp(0.5j), cmath.exp(0.7j)])
    turning = ph_from_preimage(make_preimage(parts, z), Mode.CLAMPED, partitions=parts)
    ts = np.linspace(0.0, 1.0, 2001)
    angles = np.unwrap(np.angle(turning.hodograph.evaluate(ts)))
    assert curve_quality(turning).rabs == pytest.approx(np.sum(np.abs(np.diff(angles))) / (2 * math.pi), rel=1e-4)


def test_feasibility_report_describes_both_conics(problem):
    report = feasibility(problem, SignCase.PP, box=(-2.0, 2.0, -2.0, 2.0), samples=21)
    doc = report.describe(problem.kappa0, problem.kappa1)
    assert doc["sign_case"] == "PP"
    assert set(doc["kinds"]) == {"A", "B"}
    assert doc["feasible"] == report.is_feasible(problem.kappa0, problem.kappa1)
    assert doc["feasible"] == (not doc["imaginary"])
    assert set(doc["invariants"]["A"]) == {"I1", "I2"}
    for k0, k1 in doc["boundary"]:
        assert -2.0 <= k1 <= 2.0
        assert abs(report.i3(k0, k1)["A"]) <= 1e-7 * (1.0 + np.max(np.abs(report.i3_forms["A"])))


def test_fitted_i3_form_matches_determinant(problem):
    report = feasibility(problem, SignCase.PM)
    for k0, k1 in ((0.3, -1.2), (2.0, 0.5), (-0.7, -0.7)):
        A, B = report.conics(k0, k1)
        fitted = report.i3(k0, k1)
        assert fitted["A"] == pytest.approx(np.linalg.det(A.matrix), rel=1e-8, abs=1e-12)
        assert fitted["B"] == pytest.approx(np.linalg.det(B.matrix), rel=1e-8, abs=1e-12)
