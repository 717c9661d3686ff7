"""
Shared test configuration and fixtures for the phspline test suite.

Provides seeded random knot vectors and preimages, the Hermite example
problems and assertion helpers used across unit and integration tests.
"""

import logging
import os
import sys
from typing import Callable, Dict, Tuple

import numpy as np
import pytest

# Set test environment variables
os.environ.update(
    {
        "PH_SPLINE_LOG_LEVEL": "WARNING",
        "PH_SPLINE_JSON_LOGS": "false",
        "PH_SPLINE_SEED": "20240501",
    }
)

sys.path.append(".")

from phspline.domain.hermite import HermiteProblem  # noqa: E402
from phspline.domain.knots import Mode, PartitionSet, build_mu, derive_partitions  # noqa: E402

# Configure test logging
logging.basicConfig(level=logging.WARNING, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logging.getLogger("phspline").setLevel(logging.WARNING)

SEED = 20240501


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


def random_spans(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.uniform(0.1, 2.0, size=count)


def random_preimage(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(-2.0, 2.0, size=size) + 1j * rng.uniform(-2.0, 2.0, size=size)


def clamped_partitions(rng: np.random.Generator, n: int, m: int) -> PartitionSet:
    """Clamped partitions with segment count m (m - n interior knots)."""
    spans = random_spans(rng, m - n + 1)
    bounds = np.concatenate([[0.0], np.cumsum(spans)])
    mu = build_mu(n, bounds[1:-1].tolist(), Mode.CLAMPED, (0.0, float(bounds[-1])))
    return derive_partitions(mu, n, Mode.CLAMPED)


def closed_partitions(rng: np.random.Generator, n: int, m: int) -> PartitionSet:
    """Closed partitions from random t_0..t_{m+n}; the wrap knots are appended."""
    knots = np.concatenate([[0.0], np.cumsum(random_spans(rng, m + n))])
    return derive_partitions(build_mu(n, knots.tolist(), Mode.CLOSED), n, Mode.CLOSED)


@pytest.fixture
def make_clamped(rng) -> Callable[[int, int], Tuple[PartitionSet, np.ndarray]]:
    def factory(n: int, m: int) -> Tuple[PartitionSet, np.ndarray]:
        parts = clamped_partitions(rng, n, m)
        return parts, random_preimage(rng, parts.p + 1)

    return factory


@pytest.fixture
def make_closed(rng) -> Callable[[int, int], Tuple[PartitionSet, np.ndarray]]:
    def factory(n: int, m: int) -> Tuple[PartitionSet, np.ndarray]:
        parts = closed_partitions(rng, n, m)
        return parts, random_preimage(rng, parts.p + 1)

    return factory


HERMITE_EXAMPLES: Dict[str, HermiteProblem] = {
    "example1": HermiteProblem(1 + 0j, 3 + 0.5j, 1 - 1j, 0.2 + 3j, 3.040559, 1.066953, 0.5),
    "example2": HermiteProblem(-6 - 1j, 1 + 0j, 30 + 25j, 25 - 30j, 0.0366, 0.0275, 0.5),
    "example3": HermiteProblem(0j, 1 + 0j, -3 + 1j, -3 - 1j, -2.5, -2.5, 0.5),
    "example4": HermiteProblem(5j, -3 + 4j, 25 - 15j, 25 - 15j, -0.2, 0.2, 0.5),
}


@pytest.fixture
def hermite_examples() -> Dict[str, HermiteProblem]:
    return dict(HERMITE_EXAMPLES)


def assert_close(actual, expected, tol: float = 1e-10, rel: bool = False) -> None:
    """Max-norm comparison of arrays or scalars, absolute or relative to the expected size."""
    a = np.asarray(actual)
    e = np.asarray(expected)
    assert a.shape == e.shape, f"shape {a.shape} != {e.shape}"
    err = float(np.max(np.abs(a - e))) if a.size else 0.0
    scale = (1.0 + float(np.max(np.abs(e)))) if rel and e.size else 1.0
    assert err <= tol * scale, f"max error {err:.3e} exceeds {tol:.1e} (scale {scale:.3g})"


def assert_on_curve_family(values: np.ndarray, reference: np.ndarray, distance: float, tol: float = 1e-9) -> None:
    gaps = np.abs(values - reference)
    assert np.all(np.abs(gaps - abs(distance)) <= tol * (1.0 + abs(distance))), f"offset gap off by {np.max(np.abs(gaps - abs(distance))):.3e}"
