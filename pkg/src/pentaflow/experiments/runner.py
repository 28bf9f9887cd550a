"""
各子命令的实验流程：读输入 -> 计算 -> 写 CSV 与 RunManifest。

流程函数只抛异常；异常到退出码的映射集中在 exit_code_for。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from ..config import (
    ToleranceConfig,
    apply_tolerance_overrides,
    load_experiment_config,
    output_dir_from_env,
    sweep_workers,
)
from ..errors import ConfigError, CurveError, DegenerateImage, GeometryError, InvalidPolygon
from ..flow import (
    check_claim,
    check_figure,
    curve_from_config,
    figure_summary,
    records_to_frame,
    run_sweep,
)
from ..flow.figures import FIGURE_VARIANT
from ..geometry import Polygon, pentagram_map, read_polygon_csv, write_polygon_csv
from ..geometry.persistence import FLOAT_FORMAT
from ..invariant import coefficient_product, invariant_f, iterate_and_measure, random_convex_polygon
from .manifest import RunManifest, config_hash, sha256_file

DEFAULT_OUTPUT_DIR = Path("outputs")
PERTURB_SCALE = 1e-2


class ExitCode(IntEnum):
    OK = 0
    INPUT_ERROR = 1
    DEGENERATE = 2
    CLAIM_FAILED = 3


@dataclass
class RunOutcome:
    exit_code: ExitCode
    lines: list[str] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)
    manifest_path: Optional[Path] = None


def exit_code_for(exc: BaseException) -> ExitCode:
    """异常 -> 退出码：输入/配置错误为 1，几何或曲线退化为 2。"""
    if isinstance(exc, (InvalidPolygon, ConfigError, FileNotFoundError, ValueError)):
        return ExitCode.INPUT_ERROR
    if isinstance(exc, (GeometryError, CurveError)):
        return ExitCode.DEGENERATE
    raise exc


def resolve_output_dir(explicit: Optional[Path], configured: Optional[str] = None) -> Path:
    """--output-dir > 配置文件 output_dir > PENTAFLOW_OUTPUT_DIR > ./outputs。"""
    if explicit is not None:
        return Path(explicit)
    if configured:
        return Path(configured)
    return output_dir_from_env() or DEFAULT_OUTPUT_DIR


def write_frame(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def load_polygon_input(
    input_path: Optional[Path],
    *,
    random_n: Optional[int] = None,
    seed: int = 0,
    convex: bool = False,
) -> tuple[Polygon, dict[str, Any], str]:
    """返回 (多边形, 用于配置哈希的来源描述, 文件名前缀)。convex=True 时非凸输入按输入错误处理。"""
    if input_path is not None and random_n is not None:
        raise ConfigError("--input 与 --random-n 只能给一个")
    if input_path is not None:
        p = Path(input_path)
        if not p.exists():
            raise ConfigError(f"输入文件不存在: {p}")
        return read_polygon_csv(p, convex=convex), {"input_sha256": sha256_file(p)}, p.stem
    if random_n is not None:
        V = random_convex_polygon(random_n, np.random.default_rng(seed))
        return V, {"random_n": random_n, "seed": seed}, f"random{random_n}_seed{seed}"
    raise ConfigError("需要 --input 或 --random-n")


def perturb_vertex(V: Polygon, index: int = 0, scale: float = PERTURB_SCALE) -> Polygon:
    """把第 index 个顶点沿离开质心的方向推出 scale * diameter（破坏不变量的负对照）。"""
    arr = V.to_array()
    direction = arr[index] - arr.mean(axis=0)
    arr[index] = arr[index] + scale * V.diameter * direction / np.linalg.norm(direction)
    return Polygon(arr)


def _finish(manifest: RunManifest, exit_code: ExitCode, files: Sequence[Path], manifest_path: Path) -> Path:
    for f in files:
        manifest.add_file(f, root=manifest_path.parent)
    manifest.finish(exit_code)
    return manifest.write(manifest_path)


def run_map(
    input_path: Optional[Path],
    iterations: int,
    output: Optional[Path] = None,
    *,
    output_dir: Optional[Path] = None,
    random_n: Optional[int] = None,
    seed: int = 0,
) -> RunOutcome:
    if iterations < 0:
        raise ConfigError(f"iterations 不能为负: {iterations}")
    V, source, stem = load_polygon_input(input_path, random_n=random_n, seed=seed)
    manifest = RunManifest("map", config_hash({"command": "map", "iterations": iterations, **source}))

    current = V
    for k in range(1, iterations + 1):
        try:
            current = pentagram_map(current)
        except DegenerateImage as exc:
            exc.iteration = k
            raise

    out = Path(output) if output is not None else resolve_output_dir(output_dir) / f"{stem}_T{iterations}.csv"
    write_polygon_csv(current, out)
    ratio = current.diameter / V.diameter
    lines = [f"n={V.n} iterations={iterations} diameter_ratio={ratio:.9g}", f"wrote {out}"]
    mpath = _finish(manifest, ExitCode.OK, [out], out.with_name(f"{out.stem}_manifest.json"))
    logger.info(f"map: {stem} -> {out}")
    return RunOutcome(ExitCode.OK, lines, [out], mpath)


def run_invariant(
    input_path: Optional[Path],
    iterations: int,
    *,
    output_dir: Optional[Path] = None,
    random_n: Optional[int] = None,
    seed: int = 0,
    tolerance_overrides: Optional[list[str]] = None,
    perturb_at: Optional[int] = None,
) -> RunOutcome:
    """打印 f(V) 与逐步漂移 |f(V_k)/f(V_0) - 1|；最大漂移低于 invariant_drift 时成功。"""
    tolerances = apply_tolerance_overrides(ToleranceConfig(), tolerance_overrides)
    V, source, stem = load_polygon_input(input_path, random_n=random_n, seed=seed)
    payload = {"command": "invariant", "iterations": iterations, "perturb_at": perturb_at, **source}
    manifest = RunManifest("invariant", config_hash({**payload, "tolerances": tolerances.model_dump()}))

    report = invariant_f(V)
    f0 = report.f_coeff
    rows = [{"step": 0, "f": f0, "drift": 0.0}]
    current = V
    for k in range(1, iterations + 1):
        try:
            current = pentagram_map(current)
        except DegenerateImage as exc:
            exc.iteration = k
            raise
        if perturb_at is not None and k == perturb_at:
            logger.warning(f"测试钩子：第 {k} 步后扰动顶点 0")
            current = perturb_vertex(current)
        fk = coefficient_product(current)
        rows.append({"step": k, "f": fk, "drift": abs(fk / f0 - 1.0)})
    table = pd.DataFrame(rows, columns=["step", "f", "drift"])
    max_drift = float(table["drift"].max())
    code = ExitCode.OK if max_drift < tolerances.invariant_drift else ExitCode.CLAIM_FAILED

    out_dir = resolve_output_dir(output_dir)
    drift_csv = write_frame(table, out_dir / f"{stem}_invariant.csv")
    factors_csv = write_frame(report.to_frame(), out_dir / f"{stem}_factors.csv")
    lines = [
        f"f_signed={report.f_signed:.12g}",
        f"f_coeff={report.f_coeff:.12g}",
        f"relative_gap={report.relative_gap:.3e}",
        "step  f  drift",
        *(f"{int(r.step)}  {r.f:.12g}  {r.drift:.3e}" for r in table.itertuples()),
        f"max_drift={max_drift:.3e} tolerance={tolerances.invariant_drift:g}",
    ]
    if code != ExitCode.OK:
        logger.warning(f"不变量漂移 {max_drift:.3e} 超过 {tolerances.invariant_drift:g}")
    files = [drift_csv, factors_csv]
    mpath = _finish(manifest, code, files, out_dir / f"{stem}_invariant_manifest.json")
    return RunOutcome(code, lines, files, mpath)


def run_flow(
    config_path: Path,
    claim: str,
    *,
    expansion: Optional[str] = None,
    strict: bool = False,
    output_dir: Optional[Path] = None,
    tolerance_overrides: Optional[list[str]] = None,
    workers: Optional[int] = None,
) -> RunOutcome:
    cfg = load_experiment_config(config_path)
    tolerances = apply_tolerance_overrides(cfg.tolerances, tolerance_overrides)
    table_name = expansion or cfg.expansion
    curve = curve_from_config(cfg.curve_config())
    points = cfg.measurement_points()
    payload = {
        "command": "flow",
        "claim": claim,
        "expansion": table_name,
        "strict": strict,
        "config": cfg.config_hash_payload(),
        "tolerances": tolerances.model_dump(),
    }
    manifest = RunManifest("flow", config_hash(payload))

    logger.info(f"flow: {cfg.name} claim={claim} expansion={table_name} n={cfg.n_values}")
    records = run_sweep(
        curve,
        claim,
        cfg.n_values,
        x_points=points,
        expansion=table_name,
        workers=workers or sweep_workers(),
    )
    result = check_claim(
        records,
        claim,
        expansion=table_name,
        tolerances=tolerances,
        strict=strict,
        all_indices=points is None,
    )
    code = ExitCode.OK if result.passed else ExitCode.CLAIM_FAILED

    out_dir = resolve_output_dir(output_dir, cfg.output_dir)
    prefix = f"{cfg.name}_{claim}_{table_name}"
    residual_csv = write_frame(records_to_frame(records), out_dir / f"{prefix}_residuals.csv")
    fit_csv = write_frame(result.to_frame(), out_dir / f"{prefix}_fit.csv")

    mode = "strict" if strict else "at_least"
    lines = [f"claim={claim} expansion={table_name} expected_slope={result.expected_slope:+g} band={result.band:g} mode={mode}"]
    for f in result.fits:
        if f.exact:
            lines.append(f"{f.kind}@{f.location}: exact (max residual {max(f.residuals):.3e}) PASS")
        elif f.slope is None:
            lines.append(f"{f.kind}@{f.location}: {f.error} FAIL")
        else:
            verdict = "PASS" if f.passed else "FAIL"
            lines.append(f"{f.kind}@{f.location}: slope={f.slope:+.4f} r2={f.r_squared:.5f} {verdict}")
    lines.append("PASS" if result.passed else "FAIL")

    files = [residual_csv, fit_csv]
    mpath = _finish(manifest, code, files, out_dir / f"{prefix}_manifest.json")
    return RunOutcome(code, lines, files, mpath)


def run_figure(
    config_path: Path,
    which: str,
    *,
    expansion: Optional[str] = None,
    output_dir: Optional[Path] = None,
    tolerance_overrides: Optional[list[str]] = None,
) -> RunOutcome:
    """fig3 用修正后的演化方程右端，fig4 用 γ'' - (2/3)Wγ'。"""
    if which not in FIGURE_VARIANT:
        raise ConfigError(f"--which 只能是 {', '.join(FIGURE_VARIANT)}，收到 {which!r}")
    cfg = load_experiment_config(config_path)
    tolerances = apply_tolerance_overrides(cfg.tolerances, tolerance_overrides)
    table_name = expansion or cfg.expansion
    curve = curve_from_config(cfg.curve_config())
    payload = {
        "command": "figure",
        "which": which,
        "expansion": table_name,
        "config": cfg.config_hash_payload(),
        "tolerances": tolerances.model_dump(),
    }
    manifest = RunManifest("figure", config_hash(payload))

    frames, summary = figure_summary(curve, cfg.n_values, which, expansion=table_name)  # type: ignore[arg-type]
    ok = check_figure(summary, which, tolerances)  # type: ignore[arg-type]
    code = ExitCode.OK if ok else ExitCode.CLAIM_FAILED

    out_dir = resolve_output_dir(output_dir, cfg.output_dir)
    prefix = f"{cfg.name}_{which}"
    files = [write_frame(frame, out_dir / f"{prefix}_n{n}.csv") for n, frame in frames.items()]
    files.append(write_frame(summary, out_dir / f"{prefix}_summary.csv"))

    lines = [f"which={which} variant={FIGURE_VARIANT[which]} expansion={table_name}"]
    lines.extend(f"n={int(r.n)} max_gap={r.max_gap:.9g}" for r in summary.itertuples())
    lines.append("PASS" if ok else "FAIL")
    mpath = _finish(manifest, code, files, out_dir / f"{prefix}_manifest.json")
    return RunOutcome(code, lines, files, mpath)


def run_converge(
    input_path: Optional[Path],
    steps: int,
    *,
    output: Optional[Path] = None,
    output_dir: Optional[Path] = None,
    random_n: Optional[int] = None,
    seed: int = 0,
    tolerance_overrides: Optional[list[str]] = None,
) -> RunOutcome:
    tolerances = apply_tolerance_overrides(ToleranceConfig(), tolerance_overrides)
    V, source, stem = load_polygon_input(input_path, random_n=random_n, seed=seed, convex=True)
    payload = {"command": "converge", "steps": steps, **source, "tolerances": tolerances.model_dump()}
    if steps < tolerances.converge_min_steps:
        raise ConfigError(f"steps 至少为 {tolerances.converge_min_steps}，收到 {steps}")
    manifest = RunManifest("converge", config_hash(payload))

    trace = iterate_and_measure(V, steps)
    if trace.completed_steps < tolerances.converge_min_steps:
        raise DegenerateImage(
            f"第 {trace.truncated_at} 步退化，只完成 {trace.completed_steps} 步"
            f"（至少需要 {tolerances.converge_min_steps}）",
            iteration=trace.truncated_at,
        )
    ok = trace.r_squared > tolerances.converge_r_squared
    code = ExitCode.OK if ok else ExitCode.CLAIM_FAILED

    out = Path(output) if output is not None else resolve_output_dir(output_dir) / f"{stem}_trace.csv"
    write_frame(trace.to_frame(), out)
    lines = [
        f"completed_steps={trace.completed_steps} requested={trace.requested_steps}",
        f"log_diameter_slope={trace.log_diameter_slope:.9g}",
        f"r2={trace.r_squared:.6f}",
        f"wrote {out}",
        "PASS" if ok else "FAIL",
    ]
    mpath = _finish(manifest, code, [out], out.with_name(f"{out.stem}_manifest.json"))
    return RunOutcome(code, lines, [out], mpath)


__all__ = [
    "ExitCode",
    "RunOutcome",
    "exit_code_for",
    "resolve_output_dir",
    "write_frame",
    "load_polygon_input",
    "perturb_vertex",
    "run_map",
    "run_invariant",
    "run_flow",
    "run_figure",
    "run_converge",
]
