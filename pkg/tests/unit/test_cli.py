import json

import pytest
from typer.testing import CliRunner

from phspline.main import app

runner = CliRunner()

CUBIC = {
    "mode": "clamped",
    "n": 1,
    "knots": [0, 0, 1, 2, 3, 3],
    "z": [[1, 0.5], [0.3, 1.2], [-0.8, 0.4], [0.6, -0.9]],
    "r0": [0.5, -1.0],
}

EXAMPLE_ONE = {"p0": [1, 0], "p1": [3, 0.5], "d0": [1, -1], "d1": [0.2, 3], "k0": 3.040559, "k1": 1.066953}


def run(tmp_path, args, name="out.json"):
    out = tmp_path / name
    result = runner.invoke(app, [*args, "--out", str(out)])
    assert result.exit_code == 0, result.output
    return json.loads(out.read_text(encoding="utf-8"))


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "cubic.json"
    path.write_text(json.dumps(CUBIC), encoding="utf-8")
    return path


@pytest.mark.parametrize("engine", ["general", "explicit"])
def test_construct_writes_curve_document(tmp_path, cubic_file, engine):
    doc = run(tmp_path, ["construct", "--in", str(cubic_file), "--engine", engine])
    assert doc["schema_version"] == 1
    assert doc["command"] == "construct"
    curve = doc["results"]["curve"]
    assert curve["engine"] == engine
    assert len(curve["r"]) == 2 * 4
    assert curve["r"][0] == [0.5, -1.0]
    assert curve["checks"]["clamped"]["ok"] is True


def test_construct_engines_agree(tmp_path, cubic_file):
    general = run(tmp_path, ["construct", "--in", str(cubic_file)], "g.json")["results"]["curve"]
    explicit = run(tmp_path, ["construct", "--in", str(cubic_file), "--engine", "explicit"], "e.json")["results"]["curve"]
    for a, b in zip(general["r"], explicit["r"]):
        assert a == pytest.approx(b, abs=1e-9)
    assert general["L"] == pytest.approx(explicit["L"], rel=1e-9)


def test_construct_from_options_with_svg_and_tensors(tmp_path):
    svg = tmp_path / "curve.svg"
    tensors = tmp_path / "tensors.json"
    doc = run(
        tmp_path,
        [
            "construct",
            "--n", "1",
            "--mode", "clamped",
            "--knots", "[0, 0, 1, 1]",
            "--z", "[[1, 0], [0, 1]]",
            "--svg", str(svg),
            "--dump-tensors", str(tensors),
        ],
    )
    curve = doc["results"]["curve"]
    assert curve["L"] == pytest.approx(2.0 / 3.0)
    expected = [[0.0, 0.0], [1 / 3, 0.0], [1 / 3, 1 / 3], [0.0, 1 / 3]]
    for got, want in zip(curve["r"], expected):
        assert got == pytest.approx(want, abs=1e-14)
    assert "<svg" in svg.read_text(encoding="utf-8")
    dumped = json.loads(tensors.read_text(encoding="utf-8"))
    assert set(dumped) == {"chi", "zeta"}


def test_offset_and_arclength_read_construct_output(tmp_path, cubic_file):
    run(tmp_path, ["construct", "--in", str(cubic_file)], "curve.json")
    curve_doc = tmp_path / "curve.json"

    offsets = run(tmp_path, ["offset", "--in", str(curve_doc), "--h", "0.1", "--h", "-0.2"], "offsets.json")
    family = offsets["results"]["offsets"]
    assert [rs["h"] for rs in family] == [0.1, -0.2]

    length = run(tmp_path, ["arclength", "--in", str(curve_doc), "--at", "1.5"], "length.json")["results"]
    assert length["relative_error"] <= 1e-9
    assert length["at"][0][0] == 1.5
    assert 0.0 < length["at"][0][1] < length["L"]


def test_hermite_example_counts(tmp_path):
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(EXAMPLE_ONE), encoding="utf-8")
    results = run(tmp_path, ["hermite", "--in", str(problem)])["results"]
    assert results["counts"] == {"PP": 2, "PM": 2}
    quality = [(s["rabs"], s["bend"]) for s in results["solutions"]]
    assert quality == sorted(quality)


def test_bad_input_exits_with_code_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**CUBIC, "knots": [0, 0, 2, 1, 3, 3]}), encoding="utf-8")
    assert runner.invoke(app, ["construct", "--in", str(bad)]).exit_code == 2
    assert runner.invoke(app, ["construct", "--n", "1", "--knots", "[0, 1"]).exit_code == 2
    assert runner.invoke(app, ["construct", "--n", "1", "--knots", "[1, 0]", "--z", "[[1, 0]]"]).exit_code == 2
    assert runner.invoke(app, ["hermite", "--in", str(tmp_path / "missing.json")]).exit_code == 2


def test_cusp_offset_exits_with_code_one(tmp_path):
    cusp = tmp_path / "cusp.json"
    cusp.write_text(json.dumps({"mode": "clamped", "n": 1, "knots": [0, 0, 1, 1], "z": [[1, 0], [-1, 0]]}))
    result = runner.invoke(app, ["offset", "--in", str(cusp), "--h", "0.1"])
    assert result.exit_code == 1


def test_missing_config_exits_with_code_two(tmp_path):
    result = runner.invoke(app, ["--config", str(tmp_path / "nope.yml"), "selftest"])
    assert result.exit_code == 2


def test_selftest_passes(tmp_path):
    doc = run(tmp_path, ["selftest", "--seed", "7"])
    assert doc["results"]["passed"] is True
    assert {c["name"] for c in doc["results"]["checks"]} == {"ph_identity", "explicit_vs_general", "hermite_example"}


def test_infeasible_hermite_problem_reports_instead_of_failing(tmp_path):
    problem = tmp_path / "problem.json"
    problem.write_text(
        json.dumps({"p0": [0, 0], "p1": [1, 0], "d0": [-3, 1], "d1": [-3, -1], "k0": -0.569210, "k1": -0.569210}),
        encoding="utf-8",
    )
    results = run(tmp_path, ["hermite", "--in", str(problem)])["results"]
    assert results["solutions"] == []
    assert "A" in results["feasibility"]["PP"]["imaginary"]


def test_construct_open_curve_with_extra_knots(tmp_path):
    base = ["construct", "--n", "1", "--knots", "[0, 1, 2, 3]", "--z", "[[1, 0], [1, 0.5]]"]
    doc = run(tmp_path, [*base, "--mode", "open", "--extra-knots", "[-0.5, 4]"])
    partitions = doc["results"]["curve"]["partitions"]
    assert partitions["rho"][0] == -0.5
    assert partitions["tau"][-1] == 4.0
    clamped = ["construct", "--n", "1", "--mode", "clamped", "--knots", "[0, 0, 1, 1]", "--z", "[[1, 0], [0, 1]]"]
    rejected = runner.invoke(app, [*clamped, "--extra-knots", "[-0.5, 4]"])
    assert rejected.exit_code == 2
