from .base import CurveDocument, CurveRequest, HermiteRequest, NumericsSettings, PHSplineConfig

__all__ = [
    "CurveDocument",
    "CurveRequest",
    "HermiteRequest",
    "NumericsSettings",
    "PHSplineConfig",
]
