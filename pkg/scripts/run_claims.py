"""运行声称回归集并输出 scorecard。"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT / "src"))

from pentaflow.cli import configure_logging  # noqa: E402
from pentaflow.experiments.scorecard import (  # noqa: E402
    DEFAULT_CLAIMSET,
    run_claimset,
    write_markdown,
    write_report,
)


def main() -> None:
    parser = argparse.ArgumentParser(description="Run pentaflow claim regression")
    parser.add_argument("--claimset", type=Path, default=DEFAULT_CLAIMSET, help="Claimset YAML path")
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=PROJECT_ROOT / "reports" / "claims",
        help="Directory for per-case CSV outputs",
    )
    parser.add_argument(
        "--output",
        type=Path,
        default=PROJECT_ROOT / "reports" / "claims_v1.json",
        help="JSON scorecard output path",
    )
    parser.add_argument("--log-level", default=None, help="loguru level (default: PENTAFLOW_LOG_LEVEL)")
    args = parser.parse_args()

    configure_logging(args.log_level)
    report = run_claimset(args.claimset, args.output_dir)
    write_report(report, args.output)
    write_markdown(report, args.output.with_suffix(".md"))

    sc = report["scorecard"]
    s = sc["summary"]
    print(f"Claimset: {sc['claimset_id']}")
    print(f"Matched expectation: {s['passed']}/{sc['case_count']} ({s['pass_rate']:.0%})")
    for case in sc["cases"]:
        mark = "PASS" if case["passed"] else "FAIL"
        print(f"  [{mark}] {case['name']}: expect={case['expect']} actual={case['actual']}")
    bench = report["benchmark"]
    print(f"Benchmark: {'PASS' if bench['passed'] else 'FAIL'}")
    for f in bench["failures"]:
        print(f"  - {f}")
    print(f"Report: {args.output}")
    sys.exit(0 if bench["passed"] else 1)


if __name__ == "__main__":
    main()
