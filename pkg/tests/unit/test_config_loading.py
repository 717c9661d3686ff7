import pytest
from pathlib import Path
from pydantic import ValidationError

from phspline.common.settings import NumericsConfig, Settings, numerics as shared_numerics
from phspline.domain.knots import Mode
from phspline.main import load_config
from phspline.models.base import CurveRequest, HermiteRequest, PHSplineConfig


def test_config_loads_successfully():
    """
    The shipped numerics file must parse into the validated config model.
    """
    config_path = Path("config/default.yml")
    assert config_path.exists(), "The default configuration file is missing."

    try:
        config = load_config(config_path)
    except Exception as e:
        pytest.fail(f"Configuration loading failed with a critical error: {e}")

    assert isinstance(config, PHSplineConfig)
    assert config.numerics.newton.max_iter == 100
    assert config.numerics.rotation_angles_deg == [0, 30, 45, 60]
    assert config.numerics.open_extra_knots == "mirror"


def test_missing_config_file_raises():
    with pytest.raises(FileNotFoundError):
        load_config("config/does-not-exist.yml")


def test_unknown_numerics_key_is_rejected(tmp_path):
    bad = tmp_path / "bad.yml"
    bad.write_text("numerics:\n  product_treshold: 1.0e-10\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_config(bad)


def test_numerics_config_reload(tmp_path):
    custom = tmp_path / "custom.yml"
    custom.write_text(
        "numerics:\n  newton:\n    max_iter: 7\n  rotation_angles_deg: [0, 15]\n  svg_samples: 64\n",
        encoding="utf-8",
    )
    numerics = NumericsConfig(Path("config/default.yml"))
    assert numerics.newton_max_iter == 100
    numerics.reload(custom)
    assert numerics.newton_max_iter == 7
    assert numerics.rotation_angles == [0.0, 15.0]
    assert numerics.svg_samples == 64
    # untouched keys fall back to defaults
    assert numerics.newton_tol == 1e-12


def test_numerics_config_without_file_uses_defaults(tmp_path):
    numerics = NumericsConfig(tmp_path / "missing.yml")
    assert numerics.rotation_angles == [0.0, 30.0, 45.0, 60.0]
    assert numerics.dedup_tol == 1e-8


def test_open_extra_knot_rule_is_validated(tmp_path):
    mean = tmp_path / "mean.yml"
    mean.write_text("numerics:\n  open_extra_knots: mean\n", encoding="utf-8")
    assert load_config(mean).numerics.open_extra_knots == "mean"
    assert NumericsConfig(mean).open_extra_knots == "mean"
    other = tmp_path / "other.yml"
    other.write_text("numerics:\n  open_extra_knots: nearest\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_config(other)


def test_seed_from_env(monkeypatch):
    monkeypatch.setenv("PH_SPLINE_SEED", "17")
    assert Settings.seed_from_env() == 17
    monkeypatch.setenv("PH_SPLINE_SEED", "seventeen")
    with pytest.raises(ValueError):
        Settings.seed_from_env()
    monkeypatch.delenv("PH_SPLINE_SEED")
    assert Settings.seed_from_env() == Settings.SEED


def test_curve_request_builds_closed_partitions():
    request = CurveRequest(mode="closed", n=1, knots=[0, 1, 2, 3], z=[[1, 0], [0, 1], [-1, 0], [1, 0]])
    parts = request.partitions()
    assert parts.mode is Mode.CLOSED
    assert parts.p == 3
    assert request.preimage().tolist() == [1 + 0j, 1j, -1 + 0j, 1 + 0j]
    assert request.start == 0j


def test_curve_request_extra_knots_override_the_open_rule():
    request = CurveRequest(mode="open", n=1, knots=[0, 1, 2, 3], z=[[1, 0], [0, 1]], extra_knots=(-0.25, 3.5))
    parts = request.partitions()
    assert parts.rho.values[0] == -0.25
    assert parts.tau.values[-1] == 3.5
    with pytest.raises(ValidationError):
        CurveRequest(n=1, knots=[0, 0, 1, 1], z=[[1, 0], [1, 0]], extra_knots=(-1, 2))


def test_configured_open_rule_reaches_partitions(monkeypatch):
    request = CurveRequest(mode="open", n=1, knots=[0, 1, 2, 4, 5], z=[[1, 0], [0, 1], [1, 1]])
    monkeypatch.setattr(shared_numerics, "open_extra_knots", "mirror")
    assert request.partitions().rho.values[0] == -1.0
    monkeypatch.setattr(shared_numerics, "open_extra_knots", "mean")
    assert request.partitions().rho.values[0] == pytest.approx(-1.25)


def test_curve_request_rejects_unknown_fields():
    with pytest.raises(ValidationError):
        CurveRequest(n=1, knots=[0, 0, 1, 1], z=[[1, 0], [1, 0]], colour="red")
    with pytest.raises(ValidationError):
        CurveRequest(n=1, knots=[0, float("inf")], z=[[1, 0]])


def test_hermite_request_defaults_to_cubic_curvatures():
    request = HermiteRequest(p0=(0, 0), p1=(1, 0), d0=(-3, 1), d1=(-3, -1))
    problem = request.to_problem()
    assert problem.kappa0 == pytest.approx(-0.569210, abs=1e-6)
    assert problem.kappa1 == pytest.approx(problem.kappa0)
    assert problem.a == 0.5
    with pytest.raises(ValidationError):
        HermiteRequest(p0=(0, 0), p1=(1, 0), d0=(0, 0), d1=(1, 0))
    with pytest.raises(ValidationError):
        HermiteRequest(p0=(0, 0), p1=(1, 0), d0=(1, 0), d1=(1, 0), a=1.0)
