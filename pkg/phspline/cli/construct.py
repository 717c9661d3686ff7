"""construct: build a PH B-spline curve from a preimage."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import typer
from structlog import get_logger

from ..common.numbers import dumps
from ..common.settings import numerics
from ..domain.explicit import ExplicitCurve, explicit_chi, explicit_curve, explicit_zeta
from ..domain.knots import Mode, PartitionSet
from ..domain.ph_curve import PHCurve, arc_length, check_clamped, check_closed, make_preimage, ph_from_preimage
from ..domain.product import solve_chi, solve_zeta
from ..models.base import CurveDocument, CurveRequest
from .common import emit, guarded, pairs, parse_json_option, read_document, write_text
from .svg import Scene, render

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class BuiltCurve:
    """One curve built by either engine; ``explicit`` is set for the closed-form engine."""

    request: CurveRequest
    partitions: PartitionSet
    ph: PHCurve
    explicit: Optional[ExplicitCurve] = None

    @property
    def control_points(self) -> np.ndarray:
        return self.explicit.r if self.explicit is not None else self.ph.control_points

    @property
    def hodograph(self) -> np.ndarray:
        return self.explicit.p if self.explicit is not None else self.ph.hodograph.coeffs

    @property
    def sigma(self) -> np.ndarray:
        return self.explicit.sigma if self.explicit is not None else self.ph.sigma.coeffs

    def length(self) -> Dict[str, Any]:
        if self.explicit is not None:
            return {"l": [float(v) for v in self.explicit.l], "L": self.explicit.L}
        al = arc_length(self.ph)
        return {"l": [float(v) for v in al.spline.coeffs], "L": al.total}

    def samples(self, count: int) -> np.ndarray:
        if self.explicit is not None:
            return self.explicit.curve.sample(count)[1]
        return self.ph.sample(count)[1]

    def checks(self) -> Dict[str, Any]:
        parts = self.partitions
        if parts.mode is Mode.CLOSED:
            return {"closed": check_closed(self.ph.preimage, parts, self.ph.chi).to_dict()}
        return {"clamped": check_clamped(self.ph).to_dict()}


def build_curve(request: CurveRequest) -> BuiltCurve:
    parts = request.partitions()
    z = request.preimage()
    if request.engine == "explicit":
        chi = explicit_chi(parts)
        curve = explicit_curve(parts, z, r0=request.start)
    else:
        chi, curve = solve_chi(parts), None
    ph = ph_from_preimage(make_preimage(parts, z), parts.mode, r0=request.start, partitions=parts, chi=chi)
    logger.info("curve_built", engine=request.engine, mode=parts.mode.value, n=parts.n, p=parts.p)
    return BuiltCurve(request, parts, ph, curve)


def curve_payload(built: BuiltCurve) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "engine": built.request.engine,
        "partitions": built.partitions.to_dict(),
        "z": pairs(built.ph.preimage.coeffs),
        "p": pairs(built.hodograph),
        "r": pairs(built.control_points),
        "sigma": [float(s) for s in built.sigma],
    }
    payload.update(built.length())
    payload["checks"] = built.checks()
    return payload


def tensors_payload(built: BuiltCurve) -> Dict[str, Any]:
    parts = built.partitions
    if built.explicit is not None:
        chi, zeta = explicit_chi(parts), explicit_zeta(parts)
    else:
        chi, zeta = built.ph.chi or solve_chi(parts), solve_zeta(parts)
    return {"chi": chi.to_dict(), "zeta": zeta.to_dict()}


def curve_scene(built: BuiltCurve) -> Scene:
    scene = Scene()
    scene.add_curve(built.samples(numerics.svg_samples))
    scene.add_polygon(built.control_points)
    return scene


def request_from_options(
    input_path: Optional[Path],
    n: Optional[int],
    mode: Optional[str],
    knots: Optional[str],
    z: Optional[str],
    r0: Optional[str],
    engine: Optional[str],
    extra_knots: Optional[str] = None,
) -> CurveRequest:
    if input_path is not None:
        doc = read_document(input_path)
    else:
        doc = {}
    overrides = {
        "n": n,
        "mode": mode,
        "knots": parse_json_option(knots, "--knots") if knots else None,
        "z": parse_json_option(z, "--z") if z else None,
        "r0": parse_json_option(r0, "--r0") if r0 else None,
        "engine": engine,
        "extra_knots": parse_json_option(extra_knots, "--extra-knots") if extra_knots else None,
    }
    doc.update({k: v for k, v in overrides.items() if v is not None})
    return CurveRequest.model_validate(doc)


@guarded("construct")
def construct(
    n: Optional[int] = typer.Option(None, "--n", help="Preimage degree"),
    mode: Optional[str] = typer.Option(None, "--mode", help="open | clamped | closed"),
    knots: Optional[str] = typer.Option(None, "--knots", help="Knot list as JSON"),
    z: Optional[str] = typer.Option(None, "--z", help="Preimage coefficients as JSON [[re, im], ...]"),
    r0: Optional[str] = typer.Option(None, "--r0", help="First control point as JSON [x, y]"),
    engine: Optional[str] = typer.Option(None, "--engine", help="general | explicit"),
    extra_knots: Optional[str] = typer.Option(
        None, "--extra-knots", help="Outer rho/tau knots of an open curve as JSON [t_minus, t_plus]"
    ),
    input_path: Optional[Path] = typer.Option(None, "--in", help="Request JSON instead of the options"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the document here instead of stdout"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Also draw the curve and its control polygon"),
    dump_tensors: Optional[Path] = typer.Option(None, "--dump-tensors", help="Write chi and zeta triples here"),
) -> None:
    """Build a PH B-spline curve from its preimage."""
    request = request_from_options(input_path, n, mode, knots, z, r0, engine, extra_knots)
    built = build_curve(request)
    document = CurveDocument(
        command="construct",
        request=request.model_dump(mode="json"),
        results={"curve": curve_payload(built)},
    )
    emit(document, out)
    if svg is not None:
        write_text(svg, render(curve_scene(built), title="PH B-spline curve"))
    if dump_tensors is not None:
        write_text(dump_tensors, dumps(tensors_payload(built)))


__all__ = ["BuiltCurve", "build_curve", "curve_payload", "curve_scene", "construct"]
