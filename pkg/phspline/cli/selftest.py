"""selftest: a seeded subset of the property checks, reported as JSON."""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import typer
from structlog import get_logger

from ..common.settings import Settings
from ..domain.explicit import explicit_curve
from ..domain.hermite import HermiteProblem, SignCase, solve_hermite
from ..domain.knots import Mode, build_mu, derive_partitions
from ..domain.ph_curve import make_preimage, ph_from_preimage
from ..models.base import CurveDocument
from .common import EXIT_NUMERICAL, emit, guarded

logger = get_logger(__name__)

EXAMPLE_ONE = HermiteProblem(
    p0=1 + 0j, p1=3 + 0.5j, d0=1 - 1j, d1=0.2 + 3j, kappa0=3.040559, kappa1=1.066953, a=0.5
)


def _random_clamped(rng: np.random.Generator, n: int, count: int):
    spans = rng.uniform(0.1, 2.0, size=count)
    knots = np.cumsum(spans)[:-1]
    parts = derive_partitions(build_mu(n, knots.tolist(), Mode.CLAMPED, (0.0, float(spans.sum()))), n, Mode.CLAMPED)
    z = rng.uniform(-2.0, 2.0, size=parts.p + 1) + 1j * rng.uniform(-2.0, 2.0, size=parts.p + 1)
    return parts, z


def check_ph_identity(rng: np.random.Generator) -> Dict[str, Any]:
    worst = 0.0
    for n in (1, 2):
        parts, z = _random_clamped(rng, n, 4)
        ph = ph_from_preimage(make_preimage(parts, z), Mode.CLAMPED, partitions=parts)
        ts = np.linspace(*parts.domain, 200)
        sigma = ph.sigma.evaluate(ts)
        speed = np.abs(ph.hodograph.evaluate(ts))
        worst = max(worst, float(np.max(np.abs(speed - sigma)) / (1.0 + float(np.max(sigma)))))
    return {"passed": worst <= 1e-10, "max_relative_error": worst}


def check_engines(rng: np.random.Generator) -> Dict[str, Any]:
    worst = 0.0
    for n in (1, 2):
        parts, z = _random_clamped(rng, n, 3)
        general = ph_from_preimage(make_preimage(parts, z), Mode.CLAMPED, partitions=parts).control_points
        explicit = explicit_curve(parts, z).r
        worst = max(worst, float(np.max(np.abs(general - explicit)) / (1.0 + float(np.max(np.abs(general))))))
    return {"passed": worst <= 1e-9, "max_relative_error": worst}


def check_hermite(_: np.random.Generator) -> Dict[str, Any]:
    solutions = solve_hermite(EXAMPLE_ONE)
    counts = {case.value: sum(1 for s in solutions if s.sign_case is case) for case in SignCase}
    return {"passed": counts == {"PP": 2, "PM": 2}, "counts": counts}


CHECKS: Dict[str, Callable[[np.random.Generator], Dict[str, Any]]] = {
    "ph_identity": check_ph_identity,
    "explicit_vs_general": check_engines,
    "hermite_example": check_hermite,
}


@guarded("selftest")
def selftest(
    seed: Optional[int] = typer.Option(None, "--seed", help="Overrides PH_SPLINE_SEED"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Run the built-in property checks; exit code 1 when any fails."""
    seed = Settings.seed_from_env() if seed is None else seed
    rng = np.random.default_rng(seed)
    checks: List[Dict[str, Any]] = []
    for name, check in CHECKS.items():
        outcome = check(rng)
        logger.info("selftest_check", check=name, passed=outcome["passed"])
        checks.append({"name": name, **outcome})
    passed = all(c["passed"] for c in checks)
    emit(CurveDocument(command="selftest", request={"seed": seed}, results={"checks": checks, "passed": passed}), out)
    if not passed:
        raise typer.Exit(EXIT_NUMERICAL)


__all__ = ["selftest", "CHECKS", "EXAMPLE_ONE"]
