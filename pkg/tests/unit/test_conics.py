import numpy as np
import pytest

from phspline.common.errors import IdenticalConics, ShapeMismatch
from phspline.domain.conics import (
    Conic,
    ConicKind,
    classify_conic,
    intersect_conics,
    pencil_coefficients,
    pencil_degenerate_lambdas,
)


def diag(c00: float, c11: float, c22: float) -> Conic:
    return Conic.from_coefficients(c00, 0.0, 0.0, c11, 0.0, c22)


@pytest.mark.parametrize(
    "conic,kind",
    [
        (diag(-1.0, 1.0, 1.0), ConicKind.ELLIPSE),
        (diag(1.0, 1.0, 1.0), ConicKind.IMAGINARY_CONIC),
        (diag(-1.0, 1.0, -1.0), ConicKind.HYPERBOLA),
        (Conic.from_coefficients(0.0, 0.0, 0.5, -1.0, 0.0, 0.0), ConicKind.PARABOLA),
        (diag(0.0, 1.0, -1.0), ConicKind.REAL_LINE_PAIR),
        (diag(0.0, 1.0, 1.0), ConicKind.IMAGINARY_LINE_PAIR),
        (diag(-1.0, 1.0, 0.0), ConicKind.PARALLEL_REAL_LINES),
        (diag(1.0, 1.0, 0.0), ConicKind.PARALLEL_IMAGINARY_LINES),
        (diag(0.0, 1.0, 0.0), ConicKind.DOUBLE_LINE),
        (Conic.from_coefficients(-1.0, 0.5, 0.0, 0.0, 0.0, 0.0), ConicKind.LINE),
        (Conic(np.zeros((3, 3))), ConicKind.TRIVIAL),
    ],
)
def test_classify_conic(conic, kind):
    assert classify_conic(conic) is kind


def test_classification_ignores_overall_sign():
    assert classify_conic(diag(1.0, -1.0, -1.0)) is ConicKind.ELLIPSE
    assert classify_conic(diag(-1.0, -1.0, -1.0)) is ConicKind.IMAGINARY_CONIC


def test_imaginary_kinds():
    assert ConicKind.IMAGINARY_CONIC.is_imaginary
    assert ConicKind.IMAGINARY_LINE_PAIR.is_imaginary
    assert ConicKind.PARALLEL_IMAGINARY_LINES.is_imaginary
    assert not ConicKind.ELLIPSE.is_imaginary
    assert not ConicKind.DOUBLE_LINE.is_imaginary


def test_unit_circle_invariants():
    circle = diag(-1.0, 1.0, 1.0)
    i1, i2, i3 = circle.invariants
    # normalized to m00 >= 0
    assert (i1, i2, i3) == pytest.approx((-2.0, 1.0, 1.0))
    assert circle.rank == 3
    assert circle.value(0.6, 0.8) == pytest.approx(0.0)
    doc = circle.to_dict()
    assert doc["kind"] == "ellipse"
    assert doc["matrix"][0][0] == -1.0


def test_conic_is_symmetrized_and_shape_checked():
    conic = Conic(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    assert conic.matrix[0, 1] == conic.matrix[1, 0] == 1.0
    with pytest.raises(ShapeMismatch):
        Conic(np.eye(2))


def test_pencil_of_diagonal_matrices():
    A = np.diag([1.0, 2.0, 3.0])
    c = pencil_coefficients(A, np.eye(3))
    assert c == pytest.approx([6.0, -11.0, 6.0, -1.0])
    assert pencil_degenerate_lambdas(A, np.eye(3)) == pytest.approx([1.0, 2.0, 3.0])


def test_pencil_matches_determinant(rng):
    A = rng.normal(size=(3, 3))
    B = rng.normal(size=(3, 3))
    A, B = A + A.T, B + B.T
    c = pencil_coefficients(A, B)
    for lam in (-1.3, 0.0, 0.7, 2.5):
        assert np.polynomial.polynomial.polyval(lam, c) == pytest.approx(np.linalg.det(A - lam * B), abs=1e-10)
    for lam in pencil_degenerate_lambdas(A, B):
        assert abs(np.linalg.det(A - lam * B)) <= 1e-8 * (1.0 + np.max(np.abs(c)))


def test_pencil_with_singular_second_conic_drops_degree():
    A = np.diag([1.0, 2.0, 3.0])
    B = np.diag([1.0, 1.0, 0.0])
    # det(A - lam B) = 3 (1 - lam)(2 - lam)
    assert pencil_degenerate_lambdas(A, B) == pytest.approx([1.0, 2.0])


def test_vanishing_pencil_is_identical():
    with pytest.raises(IdenticalConics):
        pencil_degenerate_lambdas(np.zeros((3, 3)), np.zeros((3, 3)))


def test_two_unit_circles_meet_twice():
    A = diag(-1.0, 1.0, 1.0)
    B = Conic.from_coefficients(0.0, -1.0, 0.0, 1.0, 0.0, 1.0)
    points = intersect_conics(A, B)
    assert len(points) == 2
    h = np.sqrt(3.0) / 2.0
    assert points[0] == pytest.approx((0.5, -h), abs=1e-12)
    assert points[1] == pytest.approx((0.5, h), abs=1e-12)


def test_crossed_ellipses_meet_four_times():
    A = Conic.from_coefficients(-1.0, 0.0, 0.0, 0.25, 0.0, 1.0)
    B = Conic.from_coefficients(-1.0, 0.0, 0.0, 1.0, 0.0, 0.25)
    points = intersect_conics(A, B)
    c = 2.0 / np.sqrt(5.0)
    assert len(points) == 4
    expected = sorted([(-c, -c), (-c, c), (c, -c), (c, c)])
    for got, want in zip(points, expected):
        assert got == pytest.approx(want, abs=1e-12)


def test_concentric_circles_do_not_meet():
    assert intersect_conics(diag(-1.0, 1.0, 1.0), diag(-4.0, 1.0, 1.0)) == []


def test_ellipse_and_hyperbola_points_lie_on_both(rng):
    A = Conic.from_coefficients(-4.0, 0.3, -0.2, 1.0, 0.1, 2.0)
    B = Conic.from_coefficients(-0.5, 0.0, 0.4, 1.0, 0.0, -1.0)
    points = intersect_conics(A, B)
    assert len(points) in (2, 4)
    for u1, u2 in points:
        assert A.value(u1, u2) == pytest.approx(0.0, abs=1e-7)
        assert B.value(u1, u2) == pytest.approx(0.0, abs=1e-7)
    assert points == sorted(points)


def test_proportional_conics_are_rejected():
    A = diag(-1.0, 1.0, 1.0)
    with pytest.raises(IdenticalConics):
        intersect_conics(A, Conic(2.0 * A.matrix))
    with pytest.raises(IdenticalConics):
        intersect_conics(A, np.zeros((3, 3)))
