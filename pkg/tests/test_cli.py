"""命令行端到端测试（typer CliRunner）。"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from pentaflow.cli import app
from pentaflow.geometry import read_polygon_csv

runner = CliRunner()


def _invoke(*args: str):
    return runner.invoke(app, [str(a) for a in args])


@pytest.fixture
def pentagon_csv(configs_dir) -> Path:
    return configs_dir / "polygons" / "regular_pentagon.csv"


def test_map_pentagon(tmp_path: Path, pentagon_csv: Path):
    out = tmp_path / "T1.csv"
    result = _invoke("map", "--input", pentagon_csv, "--iterations", 1, "--output", out)
    assert result.exit_code == 0, result.output
    assert "diameter_ratio=0.381966" in result.output
    image = read_polygon_csv(out).to_array()
    np.testing.assert_allclose(np.linalg.norm(image, axis=1), (3 - math.sqrt(5)) / 2, atol=1e-12)
    manifest = json.loads((tmp_path / "T1_manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "map"
    assert "T1.csv" in manifest["files"]


def test_map_zero_iterations_is_identity(tmp_path: Path, pentagon_csv: Path):
    out = tmp_path / "same.csv"
    result = _invoke("map", "-i", pentagon_csv, "-k", 0, "-o", out)
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == pentagon_csv.read_bytes()


def test_map_rejects_square(tmp_path: Path, configs_dir):
    result = _invoke("map", "-i", configs_dir / "polygons" / "square.csv", "--output-dir", tmp_path)
    assert result.exit_code == 1
    assert "n >= 5" in result.output


def test_map_missing_input(tmp_path: Path):
    result = _invoke("map", "-i", tmp_path / "nope.csv", "--output-dir", tmp_path)
    assert result.exit_code == 1


def test_map_is_deterministic(tmp_path: Path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert _invoke("map", "--random-n", 9, "--seed", 3, "-k", 4, "-o", a).exit_code == 0
    assert _invoke("map", "--random-n", 9, "--seed", 3, "-k", 4, "-o", b).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    ha = json.loads((tmp_path / "a_manifest.json").read_text(encoding="utf-8"))["config_hash"]
    hb = json.loads((tmp_path / "b_manifest.json").read_text(encoding="utf-8"))["config_hash"]
    assert ha == hb


def test_invariant_hexagon(tmp_path: Path, configs_dir):
    result = _invoke("invariant", "-i", configs_dir / "polygons" / "regular_hexagon.csv", "--output-dir", tmp_path)
    assert result.exit_code == 0, result.output
    f_line = next(line for line in result.output.splitlines() if line.startswith("f_coeff="))
    assert float(f_line.split("=")[1]) == pytest.approx(2.0**-12, rel=1e-9)
    assert (tmp_path / "regular_hexagon_invariant.csv").exists()
    assert (tmp_path / "regular_hexagon_factors.csv").exists()


def test_invariant_random_polygon(tmp_path: Path):
    result = _invoke("invariant", "--random-n", 12, "--seed", 1, "-k", 5, "--output-dir", tmp_path)
    assert result.exit_code == 0, result.output


def test_invariant_perturbation_fails(tmp_path: Path):
    result = _invoke("invariant", "--random-n", 12, "--seed", 1, "-k", 5, "--perturb-at", 2, "--output-dir", tmp_path)
    assert result.exit_code == 3


def test_invariant_unknown_tolerance(tmp_path: Path):
    result = _invoke("invariant", "--random-n", 8, "--tolerance", "bogus=1", "--output-dir", tmp_path)
    assert result.exit_code == 1


def test_flow_circle_passes(tmp_path: Path, configs_dir):
    cfg = configs_dir / "experiments" / "circle_flow.yaml"
    result = _invoke("flow", "-c", cfg, "--claim", "lemma32", "--output-dir", tmp_path)
    assert result.exit_code == 0, result.output
    assert (tmp_path / "circle_lemma32_stated_residuals.csv").exists()
    assert (tmp_path / "circle_lemma32_stated_fit.csv").exists()
    assert (tmp_path / "circle_lemma32_stated_manifest.json").exists()


def test_flow_stated_evolution_fails_on_figure3(tmp_path: Path, configs_dir):
    cfg = configs_dir / "experiments" / "figure3_flow.yaml"
    stated = _invoke("flow", "-c", cfg, "--claim", "theorem31", "--output-dir", tmp_path)
    assert stated.exit_code == 3
    assert "FAIL" in stated.output
    rederived = _invoke("flow", "-c", cfg, "--claim", "theorem31", "--expansion", "rederived", "--output-dir", tmp_path)
    assert rederived.exit_code == 0, rederived.output


def test_flow_bad_inputs(tmp_path: Path, configs_dir):
    assert _invoke("flow", "-c", tmp_path / "missing.yaml", "--claim", "eq4").exit_code == 1
    cfg = configs_dir / "experiments" / "circle_flow.yaml"
    assert _invoke("flow", "-c", cfg, "--claim", "lemma99", "--output-dir", tmp_path).exit_code == 1


def test_figure_writes_frames(tmp_path: Path, configs_dir):
    cfg = configs_dir / "experiments" / "figure3_figures.yaml"
    result = _invoke("figure", "-c", cfg, "--which", "fig3", "--output-dir", tmp_path)
    assert result.exit_code == 0, result.output
    for n in (20, 30, 40):
        assert (tmp_path / f"figure3_fig3_n{n}.csv").exists()
    assert (tmp_path / "figure3_fig3_summary.csv").exists()


def test_figure_unknown_variant(tmp_path: Path, configs_dir):
    cfg = configs_dir / "experiments" / "figure3_figures.yaml"
    assert _invoke("figure", "-c", cfg, "--which", "fig9", "--output-dir", tmp_path).exit_code == 1


def test_converge_pentagon(tmp_path: Path, pentagon_csv: Path):
    out = tmp_path / "trace.csv"
    result = _invoke("converge", "-i", pentagon_csv, "--steps", 10, "-o", out)
    assert result.exit_code == 0, result.output
    slope_line = next(line for line in result.output.splitlines() if line.startswith("log_diameter_slope="))
    assert float(slope_line.split("=")[1]) == pytest.approx(math.log(0.3819660112501051), abs=1e-6)
    assert out.exists()


def test_converge_too_few_steps(tmp_path: Path, pentagon_csv: Path):
    assert _invoke("converge", "-i", pentagon_csv, "--steps", 3, "--output-dir", tmp_path).exit_code == 1


def test_converge_rejects_concave_input(tmp_path: Path):
    concave = tmp_path / "concave.csv"
    concave.write_text("0,0\n1,0.2\n2,0\n2,2\n0,2\n", encoding="utf-8")
    result = _invoke("converge", "-i", concave, "--steps", 10, "--output-dir", tmp_path)
    assert result.exit_code == 1
    assert not list(tmp_path.glob("*_trace.csv"))
