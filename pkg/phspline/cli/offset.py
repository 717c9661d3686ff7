"""offset: rational offsets of a curve document."""

from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from structlog import get_logger

from ..common.errors import InputError
from ..common.settings import numerics
from ..domain.explicit import explicit_offset
from ..domain.ph_curve import RationalSpline, offset_family
from ..models.base import CurveDocument, CurveRequest
from .common import emit, guarded, read_document, write_text
from .construct import BuiltCurve, build_curve, curve_scene
from .svg import render

logger = get_logger(__name__)


def request_from_document(doc: Dict[str, Any]) -> CurveRequest:
    """Accept a construct document or a bare curve request."""
    body = doc.get("request", doc)
    if not isinstance(body, dict):
        raise InputError("curve document has no request object")
    return CurveRequest.model_validate(body)


def offsets_for(built: BuiltCurve, distances: List[float]) -> List[RationalSpline]:
    if built.explicit is not None:
        return [explicit_offset(built.explicit, h) for h in distances]
    return offset_family(built.ph, distances)


@guarded("offset")
def offset(
    h: List[float] = typer.Option(..., "--h", help="Signed offset distance; repeat for a family"),
    input_path: Optional[Path] = typer.Option(None, "--in", help="Curve document; stdin when omitted"),
    out: Optional[Path] = typer.Option(None, "--out"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Draw the curve with its offsets"),
) -> None:
    """Rational offset curves of a PH B-spline curve."""
    request = request_from_document(read_document(input_path))
    built = build_curve(request)
    family = offsets_for(built, list(h))
    logger.info("offsets_built", count=len(family))
    document = CurveDocument(
        command="offset",
        request={"curve": request.model_dump(mode="json"), "h": list(h)},
        results={"offsets": [rs.to_dict() for rs in family]},
    )
    emit(document, out)
    if svg is not None:
        scene = curve_scene(built)
        for rs in family:
            scene.add_offset(rs.sample(numerics.svg_samples)[1])
        write_text(svg, render(scene, title="PH B-spline offsets"))


__all__ = ["offset", "request_from_document", "offsets_for"]
