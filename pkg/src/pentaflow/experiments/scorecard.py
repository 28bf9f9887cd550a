"""声称集（claimset）回归：逐条运行 flow / figure，对照预期结果汇总 scorecard。"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import Any, Optional

import yaml
from loguru import logger

from ..errors import ConfigError, CurveError, GeometryError
from .runner import ExitCode, exit_code_for, run_figure, run_flow

PROJECT_ROOT = Path(__file__).resolve().parents[3]
DEFAULT_CLAIMSET = PROJECT_ROOT / "claimsets" / "claims_v1.yaml"


def load_claimset(path: Path | str) -> dict[str, Any]:
    p = Path(path)
    try:
        data = yaml.safe_load(p.read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"无法读取 claimset {p}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("cases"), list):
        raise ConfigError(f"claimset 需要 cases 列表: {p}")
    data["_base_dir"] = p.parent
    return data


def run_case(case: dict[str, Any], base_dir: Path, output_dir: Path) -> dict[str, Any]:
    """运行一条用例；passed 表示实际结论（pass / fail）与 expect 一致。"""
    config = (base_dir / case["config"]).resolve()
    expect = case.get("expect", "pass")
    try:
        if "which" in case:
            outcome = run_figure(
                config, case["which"], expansion=case.get("expansion"), output_dir=output_dir
            )
        else:
            outcome = run_flow(
                config,
                case["claim"],
                expansion=case.get("expansion"),
                strict=bool(case.get("strict", False)),
                output_dir=output_dir,
            )
        code, lines = outcome.exit_code, outcome.lines
    except (GeometryError, CurveError, ConfigError, ValueError, FileNotFoundError) as exc:
        code, lines = exit_code_for(exc), [f"error: {exc}"]

    actual = {ExitCode.OK: "pass", ExitCode.CLAIM_FAILED: "fail"}.get(ExitCode(code), "error")
    failures = [] if actual == expect else [f"expect={expect} actual={actual} (exit {int(code)})"]
    return {
        "case_id": case["name"],
        "tags": list(case.get("tags") or []),
        "expect": expect,
        "actual": actual,
        "exit_code": int(code),
        "passed": not failures,
        "failures": failures,
        "lines": lines,
    }


def build_scorecard(claimset_id: str, results: list[dict[str, Any]]) -> dict[str, Any]:
    total = len(results)
    passed = sum(1 for r in results if r.get("passed"))
    bucket_counter: Counter[str] = Counter()
    bucket_pass: Counter[str] = Counter()
    for r in results:
        for bucket in r.get("tags") or ["untagged"]:
            bucket_counter[bucket] += 1
            if r.get("passed"):
                bucket_pass[bucket] += 1

    by_bucket = {
        bucket: {
            "total": count,
            "passed": bucket_pass.get(bucket, 0),
            "pass_rate": round(bucket_pass.get(bucket, 0) / count, 4) if count else 0.0,
        }
        for bucket, count in sorted(bucket_counter.items())
    }
    return {
        "claimset_id": claimset_id,
        "case_count": total,
        "summary": {
            "passed": passed,
            "failed": total - passed,
            "pass_rate": round(passed / total, 4) if total else 0.0,
        },
        "by_bucket": by_bucket,
        "cases": [
            {
                "name": r.get("case_id"),
                "passed": r.get("passed"),
                "expect": r.get("expect"),
                "actual": r.get("actual"),
                "tags": r.get("tags"),
                "failures": r.get("failures"),
            }
            for r in results
        ],
    }


def check_benchmark(scorecard: dict[str, Any], benchmark: Optional[dict[str, Any]]) -> dict[str, Any]:
    """对照 claimset 的 benchmark 块检查是否达标。"""
    benchmark = benchmark or {}
    min_pass_rate = float(benchmark.get("min_pass_rate", 1.0))
    actual_rate = float(scorecard.get("summary", {}).get("pass_rate", 0.0))
    failures = []
    if actual_rate < min_pass_rate:
        failures.append(f"benchmark: pass_rate {actual_rate:.0%} < 最低 {min_pass_rate:.0%}")
    return {
        "passed": not failures,
        "failures": failures,
        "thresholds": {"min_pass_rate": min_pass_rate},
        "actual": {"pass_rate": actual_rate},
    }


def run_claimset(path: Path | str, output_dir: Path) -> dict[str, Any]:
    data = load_claimset(path)
    base_dir: Path = data["_base_dir"]
    results = []
    for case in data["cases"]:
        logger.info(f"claimset case: {case.get('name')}")
        results.append(run_case(case, base_dir, output_dir))
    scorecard = build_scorecard(str(data.get("claimset_id", Path(path).stem)), results)
    return {
        "scorecard": scorecard,
        "benchmark": check_benchmark(scorecard, data.get("benchmark")),
        "results": results,
    }


def write_report(report: dict[str, Any], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, ensure_ascii=False, default=str), encoding="utf-8")


def write_markdown(report: dict[str, Any], path: Path) -> None:
    sc = report["scorecard"]
    s = sc["summary"]
    lines = [
        f"# Claim scorecard: {sc['claimset_id']}",
        "",
        f"- **符合预期**: {s['passed']}/{sc['case_count']} ({s['pass_rate']:.0%})",
        f"- **benchmark**: {'PASS' if report['benchmark']['passed'] else 'FAIL'}",
        "",
        "| 用例 | 预期 | 实际 | 结果 |",
        "|------|------|------|------|",
    ]
    for case in sc["cases"]:
        mark = "PASS" if case["passed"] else "FAIL"
        lines.append(f"| {case['name']} | {case['expect']} | {case['actual']} | {mark} |")
    lines.extend(["", "## 分桶结果", ""])
    for bucket, stats in sc.get("by_bucket", {}).items():
        lines.append(f"- {bucket}: {stats['passed']}/{stats['total']}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


__all__ = [
    "DEFAULT_CLAIMSET",
    "load_claimset",
    "run_case",
    "build_scorecard",
    "check_benchmark",
    "run_claimset",
    "write_report",
    "write_markdown",
]
