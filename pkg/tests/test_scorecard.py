"""声称回归集汇总逻辑测试。"""

from __future__ import annotations

from pathlib import Path

import pytest

from pentaflow.errors import ConfigError
from pentaflow.experiments.scorecard import (
    DEFAULT_CLAIMSET,
    build_scorecard,
    check_benchmark,
    load_claimset,
    run_case,
    write_markdown,
)


def _result(name: str, passed: bool, tags: list[str]) -> dict:
    return {
        "case_id": name,
        "tags": tags,
        "expect": "pass",
        "actual": "pass" if passed else "fail",
        "passed": passed,
        "failures": [] if passed else ["expect=pass actual=fail (exit 3)"],
    }


def test_build_scorecard_buckets():
    results = [
        _result("a", True, ["circle", "coefficients"]),
        _result("b", False, ["figure3"]),
        _result("c", True, []),
    ]
    sc = build_scorecard("demo", results)
    assert sc["case_count"] == 3
    assert sc["summary"]["passed"] == 2
    assert sc["summary"]["pass_rate"] == pytest.approx(0.6667)
    assert sc["by_bucket"]["figure3"] == {"total": 1, "passed": 0, "pass_rate": 0.0}
    assert sc["by_bucket"]["untagged"]["passed"] == 1


def test_check_benchmark():
    sc = build_scorecard("demo", [_result("a", True, []), _result("b", False, [])])
    assert not check_benchmark(sc, {"min_pass_rate": 1.0})["passed"]
    assert check_benchmark(sc, {"min_pass_rate": 0.5})["passed"]
    assert not check_benchmark(sc, None)["passed"]


def test_shipped_claimset_loads():
    data = load_claimset(DEFAULT_CLAIMSET)
    assert data["claimset_id"] == "claims_v1"
    assert {case.get("expect", "pass") for case in data["cases"]} == {"pass", "fail"}
    for case in data["cases"]:
        assert (data["_base_dir"] / case["config"]).exists()


def test_bad_claimset(tmp_path: Path):
    path = tmp_path / "empty.yaml"
    path.write_text("claimset_id: x\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_claimset(path)


def test_run_case_expected_failure(tmp_path: Path, configs_dir):
    case = {
        "name": "figure3_theorem31_stated",
        "config": "experiments/figure3_flow.yaml",
        "claim": "theorem31",
        "expansion": "stated",
        "expect": "fail",
        "tags": ["figure3"],
    }
    result = run_case(case, configs_dir, tmp_path)
    assert result["actual"] == "fail"
    assert result["passed"]


def test_run_case_reports_errors(tmp_path: Path):
    case = {"name": "missing", "config": "nope.yaml", "claim": "eq4"}
    result = run_case(case, tmp_path, tmp_path)
    assert result["actual"] == "error"
    assert not result["passed"]


def test_markdown_report(tmp_path: Path):
    sc = build_scorecard("demo", [_result("a", True, ["circle"])])
    report = {"scorecard": sc, "benchmark": check_benchmark(sc, None)}
    path = tmp_path / "card.md"
    write_markdown(report, path)
    text = path.read_text(encoding="utf-8")
    assert "| a | pass | pass | PASS |" in text
    assert "- circle: 1/1" in text
