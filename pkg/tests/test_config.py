"""配置加载、容差覆盖与运行清单测试。"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from pentaflow.config import (
    DEFAULT_TOLERANCES,
    ExperimentConfig,
    apply_tolerance_overrides,
    load_curve_config,
    load_experiment_config,
    output_dir_from_env,
    sweep_workers,
)
from pentaflow.errors import ConfigError
from pentaflow.experiments.manifest import RunManifest, config_hash, load_manifest, sha256_file


def test_load_shipped_experiment(configs_dir):
    cfg = load_experiment_config(configs_dir / "experiments" / "figure3_flow.yaml")
    assert cfg.name == "figure3"
    assert cfg.n_values == [40, 80, 160, 320]
    assert cfg.measurement_points() == [0.25, 0.7]
    assert cfg.curve_config().name == "figure3"
    assert len(cfg.curve_config().terms) == 3


def test_all_shipped_configs_load(configs_dir):
    for path in sorted((configs_dir / "experiments").glob("*.yaml")):
        assert load_experiment_config(path).n_values
    for path in sorted((configs_dir / "curves").glob("*.json")):
        load_curve_config(path)


def test_seed_only_enters_config_hash(configs_dir):
    for path in sorted((configs_dir / "experiments").glob("*.yaml")):
        assert "seed:" not in path.read_text(encoding="utf-8")
    base = ExperimentConfig(curve={"terms": []}, n_values=[10, 20])
    seeded = ExperimentConfig(curve={"terms": []}, n_values=[10, 20], seed=7)
    assert base.measurement_points() == seeded.measurement_points()
    assert config_hash(base.config_hash_payload()) != config_hash(seeded.config_hash_payload())


def test_n_values_validation():
    with pytest.raises(ValueError, match="n >= 5"):
        ExperimentConfig(curve={"terms": []}, n_values=[4, 10])
    with pytest.raises(ValueError):
        ExperimentConfig(curve={"terms": []}, n_values=[10, 10])
    cfg = ExperimentConfig(curve={"terms": []}, n_values=[40, 10, 20])
    assert cfg.n_values == [10, 20, 40]


def test_indices_modes():
    assert ExperimentConfig(curve={"terms": []}, n_values=[10], indices="all").measurement_points() is None
    cfg = ExperimentConfig(curve={"terms": []}, n_values=[10, 20], indices=[0, 5])
    assert cfg.measurement_points() == [0.0, 0.5]


def test_x_points_range():
    with pytest.raises(ValueError):
        ExperimentConfig(curve={"terms": []}, n_values=[10], x_points=[1.0])


def test_unknown_key_rejected(tmp_path: Path):
    path = tmp_path / "bad.yaml"
    path.write_text("curve: {terms: []}\nn_values: [10]\nbogus: 1\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_experiment_config(path)


def test_missing_and_malformed_files(tmp_path: Path):
    with pytest.raises(ConfigError):
        load_experiment_config(tmp_path / "missing.yaml")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_curve_config(broken)
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_experiment_config(listing)


def test_singular_linear_map_rejected(tmp_path: Path):
    path = tmp_path / "flat.json"
    path.write_text(json.dumps({"terms": [], "linear": {"matrix": [[1, 2], [2, 4]]}}), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_curve_config(path)


def test_tolerance_overrides():
    tol = apply_tolerance_overrides(DEFAULT_TOLERANCES, ["slope_band=0.5", "r_squared_min = 0.9"])
    assert tol.slope_band == 0.5
    assert tol.r_squared_min == 0.9
    assert DEFAULT_TOLERANCES.slope_band == 0.3
    assert apply_tolerance_overrides(DEFAULT_TOLERANCES, None) is DEFAULT_TOLERANCES
    with pytest.raises(ConfigError):
        apply_tolerance_overrides(DEFAULT_TOLERANCES, ["nope=1"])
    with pytest.raises(ConfigError):
        apply_tolerance_overrides(DEFAULT_TOLERANCES, ["slope_band"])
    with pytest.raises(ConfigError):
        apply_tolerance_overrides(DEFAULT_TOLERANCES, ["slope_band=-1"])


def test_environment_knobs(monkeypatch, tmp_path: Path):
    monkeypatch.delenv("PENTAFLOW_OUTPUT_DIR", raising=False)
    assert output_dir_from_env() is None
    monkeypatch.setenv("PENTAFLOW_OUTPUT_DIR", str(tmp_path))
    assert output_dir_from_env() == tmp_path
    monkeypatch.setenv("PENTAFLOW_SWEEP_WORKERS", "4")
    assert sweep_workers() == 4
    monkeypatch.setenv("PENTAFLOW_SWEEP_WORKERS", "many")
    assert sweep_workers() == 1


def test_config_hash_is_key_order_independent():
    assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


def test_manifest_round_trip(tmp_path: Path):
    out = tmp_path / "result.csv"
    out.write_text("0,1\n", encoding="utf-8")
    manifest = RunManifest(command="map", config_hash=config_hash({"k": 1}))
    manifest.add_file(out, tmp_path)
    manifest.finish(0)
    path = manifest.write(tmp_path / "run_manifest.json")
    data = load_manifest(path)
    assert data["command"] == "map"
    assert data["exit_code"] == 0
    assert data["files"] == {"result.csv": sha256_file(out)}
    assert data["duration_seconds"] >= 0
