"""
SVG rendering of curves, control polygons, offsets and Hermite data.

The view box is fitted to everything drawn plus a 5% margin and the y axis
points up.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

MARGIN = 0.05

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _num(value: float) -> str:
    return repr(float(value) + 0.0)


@dataclass
class Polyline:
    points: np.ndarray
    stroke: str = "#1f77b4"
    width: float = 1.0
    dashed: bool = False
    markers: bool = False


@dataclass
class Arrow:
    origin: complex
    direction: complex
    stroke: str = "#000000"


@dataclass
class Scene:
    lines: List[Polyline] = field(default_factory=list)
    arrows: List[Arrow] = field(default_factory=list)
    dots: List[complex] = field(default_factory=list)

    def add_curve(self, points: Sequence[complex], index: int = 0) -> None:
        self.lines.append(Polyline(np.asarray(points, dtype=complex), stroke=_PALETTE[index % len(_PALETTE)], width=1.5))

    def add_polygon(self, points: Sequence[complex]) -> None:
        self.lines.append(
            Polyline(np.asarray(points, dtype=complex), stroke="#7f7f7f", width=0.75, dashed=True, markers=True)
        )

    def add_offset(self, points: Sequence[complex]) -> None:
        self.lines.append(Polyline(np.asarray(points, dtype=complex), stroke="#2ca02c", width=1.0, dashed=True))

    def bounds(self) -> Tuple[float, float, float, float]:
        pts: List[complex] = []
        for line in self.lines:
            pts.extend(line.points.tolist())
        for arrow in self.arrows:
            pts.extend([arrow.origin, arrow.origin + arrow.direction])
        pts.extend(self.dots)
        if not pts:
            return -1.0, -1.0, 1.0, 1.0
        arr = np.asarray(pts, dtype=complex)
        return float(arr.real.min()), float(arr.imag.min()), float(arr.real.max()), float(arr.imag.max())


def render(scene: Scene, width: int = 640, title: Optional[str] = None) -> str:
    x0, y0, x1, y1 = scene.bounds()
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = MARGIN * span
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    stroke_unit = span / 400.0
    height = int(round(width * h / w)) if w > 0 else width

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_num(x0)} {_num(-y1)} {_num(w)} {_num(h)}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g transform="scale(1,-1)">')
    for line in scene.lines:
        coords = " ".join(f"{_num(p.real)},{_num(p.imag)}" for p in line.points)
        dash = f' stroke-dasharray="{_num(4 * stroke_unit)},{_num(3 * stroke_unit)}"' if line.dashed else ""
        out.append(
            f'<polyline fill="none" stroke="{line.stroke}" stroke-width="{_num(line.width * stroke_unit)}"{dash} '
            f'points="{coords}"/>'
        )
        if line.markers:
            for p in line.points:
                out.append(
                    f'<circle cx="{_num(p.real)}" cy="{_num(p.imag)}" r="{_num(2 * stroke_unit)}" fill="{line.stroke}"/>'
                )
    for arrow in scene.arrows:
        tip = arrow.origin + arrow.direction
        out.append(
            f'<line x1="{_num(arrow.origin.real)}" y1="{_num(arrow.origin.imag)}" x2="{_num(tip.real)}" '
            f'y2="{_num(tip.imag)}" stroke="{arrow.stroke}" stroke-width="{_num(stroke_unit)}"/>'
        )
    for dot in scene.dots:
        out.append(f'<circle cx="{_num(dot.real)}" cy="{_num(dot.imag)}" r="{_num(3 * stroke_unit)}" fill="#000000"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["Polyline", "Arrow", "Scene", "render"]
