from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..common.settings import numerics
from ..domain.hermite import HermiteProblem, cubic_reference_curvatures
from ..domain.knots import KnotVector, Mode, PartitionSet, build_mu, derive_partitions

SCHEMA_VERSION = 1

Pair = Tuple[float, float]


class NewtonSettings(BaseModel):
    max_iter: int = Field(100, gt=0)
    tol: float = Field(1e-12, gt=0)


class ConicSettings(BaseModel):
    dedup_tol: float = Field(1e-8, gt=0)
    on_conic_tol: float = Field(1e-8, gt=0)
    real_root_tol: float = Field(1e-9, gt=0)


class NumericsSettings(BaseModel):
    """The ``numerics`` block of config/default.yml."""

    model_config = ConfigDict(extra="forbid")

    product_threshold: float = Field(1e-12, ge=0)
    regularity_tol: float = Field(1e-12, ge=0)
    newton: NewtonSettings = Field(default_factory=NewtonSettings)
    conics: ConicSettings = Field(default_factory=ConicSettings)
    quality_tol: float = Field(1e-9, gt=0)
    svg_samples: int = Field(512, ge=2)
    rotation_angles_deg: List[float] = Field(default_factory=lambda: [0.0, 30.0, 45.0, 60.0])
    open_extra_knots: Literal["mirror", "mean"] = "mirror"


class PHSplineConfig(BaseModel):
    numerics: NumericsSettings = Field(default_factory=NumericsSettings)


def _complex(pair: Pair) -> complex:
    return complex(pair[0], pair[1])


class CurveRequest(BaseModel):
    """
    Input of ``construct``.

    ``knots`` is the flat preimage knot vector for open and clamped curves; for
    closed curves it is t_0..t_{m+n} and the wrap knots are appended.
    ``extra_knots`` replaces the configured rule for the outer rho and tau
    knots of an open curve.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Mode = Mode.CLAMPED
    n: int = Field(..., ge=1)
    knots: List[float] = Field(..., min_length=2)
    z: List[Pair] = Field(..., min_length=1)
    r0: Pair = (0.0, 0.0)
    engine: Literal["general", "explicit"] = "general"
    extra_knots: Optional[Pair] = None

    @field_validator("knots")
    @classmethod
    def _finite_knots(cls, value: List[float]) -> List[float]:
        if not all(np.isfinite(value)):
            raise ValueError("knots must be finite")
        return value

    @model_validator(mode="after")
    def _extra_knots_need_open_mode(self) -> "CurveRequest":
        if self.extra_knots is not None and self.mode is not Mode.OPEN:
            raise ValueError("extra_knots only apply to open curves")
        return self

    def mu(self) -> KnotVector:
        if self.mode is Mode.CLOSED:
            return build_mu(self.n, self.knots, Mode.CLOSED)
        return KnotVector.from_flat(self.knots)

    def partitions(self) -> PartitionSet:
        return derive_partitions(
            self.mu(), self.n, self.mode, extra_knots=self.extra_knots, open_rule=numerics.open_extra_knots
        )

    def preimage(self) -> np.ndarray:
        return np.array([_complex(c) for c in self.z], dtype=complex)

    @property
    def start(self) -> complex:
        return _complex(self.r0)


class HermiteRequest(BaseModel):
    """Input of ``hermite``; missing curvatures default to those of the interpolating cubic."""

    model_config = ConfigDict(extra="forbid")

    p0: Pair
    p1: Pair
    d0: Pair
    d1: Pair
    k0: Optional[float] = None
    k1: Optional[float] = None
    a: float = Field(0.5, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _nonzero_tangents(self) -> "HermiteRequest":
        if self.d0 == (0.0, 0.0) or self.d1 == (0.0, 0.0):
            raise ValueError("end tangents must be nonzero")
        return self

    def to_problem(self) -> HermiteProblem:
        k0, k1 = self.k0, self.k1
        if k0 is None or k1 is None:
            ref0, ref1 = cubic_reference_curvatures(self.p0, self.p1, self.d0, self.d1)
            k0 = ref0 if k0 is None else k0
            k1 = ref1 if k1 is None else k1
        return HermiteProblem(
            p0=_complex(self.p0),
            p1=_complex(self.p1),
            d0=_complex(self.d0),
            d1=_complex(self.d1),
            kappa0=k0,
            kappa1=k1,
            a=self.a,
        )


class CurveDocument(BaseModel):
    """Envelope written by every command."""

    schema_version: int = SCHEMA_VERSION
    command: str
    request: Dict[str, Any]
    results: Any


__all__ = [
    "SCHEMA_VERSION",
    "NumericsSettings",
    "PHSplineConfig",
    "CurveRequest",
    "HermiteRequest",
    "CurveDocument",
]
