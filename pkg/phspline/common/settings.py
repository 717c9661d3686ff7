"""
Settings and numerical configuration for phspline.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent.parent / "config" / "default.yml"


class NumericsConfig:
    """Numerical tolerances and sample counts, loaded from config/default.yml."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
        self.product_threshold = 1e-12
        self.regularity_tol = 1e-12
        self.newton_max_iter = 100
        self.newton_tol = 1e-12
        self.dedup_tol = 1e-8
        self.on_conic_tol = 1e-8
        self.real_root_tol = 1e-9
        self.quality_tol = 1e-9
        self.svg_samples = 512
        self.rotation_angles: List[float] = []
        self.open_extra_knots = "mirror"
        self._load_config()

    def _load_config(self) -> None:
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                config_data = yaml.safe_load(fh) or {}
            self._apply(config_data.get("numerics", {}))
            logger.debug("numerics config loaded from %s", self.path)
        except FileNotFoundError:
            logger.warning("config file not found: %s, using defaults", self.path)
            self._load_defaults()
        except (yaml.YAMLError, TypeError, ValueError) as exc:
            logger.error("error loading config %s: %s, using defaults", self.path, exc)
            self._load_defaults()

    def _apply(self, data: Dict[str, Any]) -> None:
        self.product_threshold = float(data.get("product_threshold", self.product_threshold))
        self.regularity_tol = float(data.get("regularity_tol", self.regularity_tol))
        newton = data.get("newton", {})
        self.newton_max_iter = int(newton.get("max_iter", self.newton_max_iter))
        self.newton_tol = float(newton.get("tol", self.newton_tol))
        conics = data.get("conics", {})
        self.dedup_tol = float(conics.get("dedup_tol", self.dedup_tol))
        self.on_conic_tol = float(conics.get("on_conic_tol", self.on_conic_tol))
        self.real_root_tol = float(conics.get("real_root_tol", self.real_root_tol))
        self.quality_tol = float(data.get("quality_tol", self.quality_tol))
        self.svg_samples = int(data.get("svg_samples", self.svg_samples))
        angles = data.get("rotation_angles_deg")
        if angles is not None:
            self.rotation_angles = [float(a) for a in angles]
        else:
            self.rotation_angles = [0.0, 30.0, 45.0, 60.0]
        self.open_extra_knots = str(data.get("open_extra_knots", self.open_extra_knots))

    def _load_defaults(self) -> None:
        self._apply({})

    def reload(self, path: Optional[Path] = None) -> None:
        """Re-read the numerics block, e.g. after the CLI received --config."""
        if path is not None:
            self.path = Path(path)
        self._load_config()


class Settings:
    """Environment-driven settings."""

    LOG_LEVEL: str = os.getenv("PH_SPLINE_LOG_LEVEL", "WARNING")
    ENABLE_JSON_LOGS: bool = os.getenv("PH_SPLINE_JSON_LOGS", "true").lower() == "true"
    SEED: int = int(os.getenv("PH_SPLINE_SEED", "20240501"))
    CONFIG_PATH: Optional[str] = os.getenv("PH_SPLINE_CONFIG")

    @classmethod
    def validate_log_level(cls) -> None:
        if cls.LOG_LEVEL.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"PH_SPLINE_LOG_LEVEL must be a logging level, got {cls.LOG_LEVEL}")

    @classmethod
    def seed_from_env(cls) -> int:
        """Read the selftest seed at call time so tests can override it."""
        raw = os.getenv("PH_SPLINE_SEED")
        if raw is None:
            return cls.SEED
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"PH_SPLINE_SEED must be an integer, got {raw!r}")


settings = Settings()

numerics = NumericsConfig(Path(settings.CONFIG_PATH) if settings.CONFIG_PATH else None)

settings.validate_log_level()
