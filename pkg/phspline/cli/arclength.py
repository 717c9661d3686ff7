"""arclength: arc-length spline and total length of a curve document."""

from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import typer
from scipy import integrate
from structlog import get_logger

from ..domain.ph_curve import arc_length
from ..models.base import CurveDocument
from .common import emit, guarded, read_document
from .construct import BuiltCurve, build_curve
from .offset import request_from_document

logger = get_logger(__name__)


def quadrature_length(built: BuiltCurve) -> float:
    """Integral of |r'(t)| by adaptive quadrature, span by span."""
    hodo = built.ph.hodograph
    lo, hi = built.ph.domain
    breaks = [v for v in built.partitions.mu.values if lo <= v <= hi]
    total = 0.0
    for left, right in zip(breaks[:-1], breaks[1:]):
        total += integrate.quad(lambda t: abs(complex(hodo(t))), left, right, epsabs=1e-13, epsrel=1e-11, limit=200)[0]
    return total


@guarded("arclength")
def arclength(
    input_path: Optional[Path] = typer.Option(None, "--in", help="Curve document; stdin when omitted"),
    at: Optional[List[float]] = typer.Option(None, "--at", help="Also report l(t) at these parameters"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Arc-length spline and total length, cross-checked by quadrature."""
    request = request_from_document(read_document(input_path))
    built = build_curve(request)
    length = built.length()
    reference = quadrature_length(built)
    logger.info("arc_length", total=length["L"], quadrature=reference)
    results: Dict[str, Any] = dict(length)
    results["quadrature"] = reference
    results["relative_error"] = abs(length["L"] - reference) / max(abs(reference), 1e-300)
    if at:
        spline = arc_length(built.ph).spline
        origin = float(spline(built.ph.domain[0]))
        results["at"] = [[float(t), float(spline(t)) - origin] for t in np.asarray(at, dtype=float)]
    emit(CurveDocument(command="arclength", request=request.model_dump(mode="json"), results=results), out)


__all__ = ["arclength", "quadrature_length"]
