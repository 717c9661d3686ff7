"""hermite: G2 Hermite interpolation by clamped quintic PH B-splines."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import typer
from structlog import get_logger

from ..common.errors import InputError, NoSolutions
from ..common.settings import numerics
from ..domain.hermite import HermiteProblem, HermiteSolution, SignCase, feasibility, solve_hermite
from ..models.base import CurveDocument, HermiteRequest
from .common import emit, guarded, read_document, write_text
from .svg import Arrow, Scene, render

logger = get_logger(__name__)


def parse_box(raw: Optional[str]) -> Optional[Tuple[float, float, float, float]]:
    if raw is None:
        return None
    try:
        values = tuple(float(v) for v in raw.split(","))
    except ValueError:
        raise InputError(f"--feasibility-box needs four numbers, got {raw!r}") from None
    if len(values) != 4 or not (values[0] < values[1] and values[2] < values[3]):
        raise InputError("--feasibility-box is k0min,k0max,k1min,k1max with increasing bounds")
    return values  # type: ignore[return-value]


def hermite_scene(problem: HermiteProblem, solutions: List[HermiteSolution]) -> Scene:
    scene = Scene()
    for index, solution in enumerate(solutions):
        scene.add_curve(solution.curve.sample(numerics.svg_samples)[1], index)
        scene.add_polygon(solution.control_points)
    reach = 0.2 * max(abs(problem.p1 - problem.p0), 1e-12)
    for point, tangent in ((problem.p0, problem.d0), (problem.p1, problem.d1)):
        scene.arrows.append(Arrow(point, reach * tangent / abs(tangent)))
        scene.dots.append(point)
    return scene


@guarded("hermite")
def hermite(
    input_path: Optional[Path] = typer.Option(None, "--in", help="Problem JSON; stdin when omitted"),
    feasibility_box: Optional[str] = typer.Option(
        None, "--feasibility-box", help="k0min,k0max,k1min,k1max for the sampled I3 = 0 boundary"
    ),
    rotation: Optional[float] = typer.Option(None, "--rotation", help="Force the working rotation (degrees)"),
    out: Optional[Path] = typer.Option(None, "--out"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Draw the solutions and the data"),
) -> None:
    """Solve a G2 Hermite problem; every solution is reported, best first."""
    request = HermiteRequest.model_validate(read_document(input_path))
    problem = request.to_problem()
    box = parse_box(feasibility_box)

    results: Dict[str, Any] = {"problem": problem.to_dict()}
    try:
        solutions = solve_hermite(problem, rotation=rotation)
    except NoSolutions as exc:
        logger.warning("hermite_no_solutions", report=exc.report)
        solutions = []
        results["feasibility"] = exc.report
    results["solutions"] = [s.to_dict() for s in solutions]
    results["counts"] = {case.value: sum(1 for s in solutions if s.sign_case is case) for case in SignCase}
    if box is not None:
        results["feasibility"] = {
            case.value: feasibility(problem, case, box=box).describe(problem.kappa0, problem.kappa1)
            for case in SignCase
        }
    emit(CurveDocument(command="hermite", request=request.model_dump(mode="json"), results=results), out)
    if svg is not None:
        write_text(svg, render(hermite_scene(problem, solutions), title="G2 Hermite interpolants"))


__all__ = ["hermite", "parse_box", "hermite_scene"]
