"""配置：曲线、容差、实验（pydantic），以及环境变量开关。"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError

MIN_N = 5


class ThetaTermConfig(BaseModel):
    """θ(x) 中的一项 amp * kind(2π * freq * x + phase)。"""

    model_config = ConfigDict(extra="forbid")

    amp: float = Field(..., description="振幅")
    freq: int = Field(..., ge=1, description="频率（正整数，保证周期为 1）")
    phase: float = Field(0.0, description="相位（弧度）")
    kind: Literal["cos", "sin"] = Field("cos", description="三角函数类型")


class LinearMapConfig(BaseModel):
    """曲线的仿射像 M γ + t。"""

    model_config = ConfigDict(extra="forbid")

    matrix: list[list[float]] = Field(..., description="2x2 可逆矩阵（行优先）")
    offset: list[float] = Field(default_factory=lambda: [0.0, 0.0], description="平移向量")

    @field_validator("matrix")
    @classmethod
    def _check_matrix(cls, v: list[list[float]]) -> list[list[float]]:
        if len(v) != 2 or any(len(row) != 2 for row in v):
            raise ValueError("matrix 必须为 2x2")
        det = v[0][0] * v[1][1] - v[0][1] * v[1][0]
        if det == 0:
            raise ValueError("matrix 不可逆")
        return v

    @field_validator("offset")
    @classmethod
    def _check_offset(cls, v: list[float]) -> list[float]:
        if len(v) != 2:
            raise ValueError("offset 必须是长度为 2 的向量")
        return v


class CurveConfig(BaseModel):
    """曲线配置文件的 JSON 结构：{"type": "theta_fourier", "terms": [...]}。"""

    model_config = ConfigDict(extra="forbid")

    type: Literal["theta_fourier"] = Field("theta_fourier", description="曲线类型")
    terms: list[ThetaTermConfig] = Field(default_factory=list, description="θ 的 Fourier 项；空列表即单位圆")
    linear: Optional[LinearMapConfig] = Field(None, description="可选的仿射像（例如椭圆）")
    name: Optional[str] = Field(None, description="曲线名称，仅用于日志与报告")


class ToleranceConfig(BaseModel):
    """默认容差表；实验配置的 tolerances 块与 --tolerance KEY=VAL 可覆盖。"""

    model_config = ConfigDict(extra="forbid")

    slope_band: float = Field(0.3, gt=0, description="拟合斜率相对声称阶数的容许偏差")
    r_squared_min: float = Field(0.98, ge=0, le=1, description="收敛阶拟合的最低 r²")
    residual_floor: float = Field(1e-12, ge=0, description="残差全部低于此值时视为精确成立")
    invariant_drift: float = Field(1e-8, gt=0, description="invariant 命令的最大允许漂移")
    converge_r_squared: float = Field(0.99, ge=0, le=1, description="converge 命令的最低 r²")
    converge_min_steps: int = Field(5, ge=2, description="converge 命令至少完成的迭代步数")
    fig4_gap_ratio: float = Field(0.25, ge=0, description="fig4 各 n 的 gap 相对 n 最小时 gap 的下限比例")


DEFAULT_TOLERANCES = ToleranceConfig()


class ExperimentConfig(BaseModel):
    """一次 flow / figure 实验的完整配置（YAML）。"""

    model_config = ConfigDict(extra="forbid")

    name: str = Field("experiment", description="实验名称，用作输出文件前缀")
    curve: Union[str, CurveConfig] = Field(..., description="曲线配置路径（相对 YAML 文件）或内联配置")
    n_values: list[int] = Field(..., min_length=1, description="采样边数列表，每个 >= 5")
    indices: Union[Literal["all"], list[int], None] = Field(
        None, description="测量位置：None 用 x_points；'all' 取所有顶点上的最大残差；整数列表按最小 n 解释为 x = j / n_min"
    )
    x_points: list[float] = Field(default_factory=lambda: [0.25], min_length=1, description="测量点 x ∈ [0, 1)")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig, description="容差覆盖")
    output_dir: Optional[str] = Field(None, description="输出目录；缺省时读 PENTAFLOW_OUTPUT_DIR")
    seed: int = Field(0, description="随机语料种子；flow / figure 不抽样，只计入 config_hash")
    expansion: Literal["stated", "rederived"] = Field("stated", description="展开式系数表")

    @field_validator("n_values")
    @classmethod
    def _check_n(cls, v: list[int]) -> list[int]:
        bad = [n for n in v if n < MIN_N]
        if bad:
            raise ValueError(f"n >= {MIN_N} required, got {bad}")
        if len(set(v)) != len(v):
            raise ValueError(f"n_values 不能重复: {v}")
        return sorted(v)

    @field_validator("x_points")
    @classmethod
    def _check_x(cls, v: list[float]) -> list[float]:
        bad = [x for x in v if not 0.0 <= x < 1.0]
        if bad:
            raise ValueError(f"x_points 必须在 [0, 1) 内: {bad}")
        return v

    def measurement_points(self) -> Optional[list[float]]:
        """解析测量位置；返回 None 表示所有顶点。"""
        if self.indices == "all":
            return None
        if isinstance(self.indices, list):
            n_min = self.n_values[0]
            return [(j % n_min) / n_min for j in self.indices]
        return list(self.x_points)

    def curve_config(self) -> CurveConfig:
        if isinstance(self.curve, CurveConfig):
            return self.curve
        return load_curve_config(self.curve)

    def config_hash_payload(self) -> dict[str, Any]:
        """用于 RunManifest.config_hash 的规范化内容（曲线内联展开）。"""
        payload = self.model_dump(mode="json")
        payload["curve"] = self.curve_config().model_dump(mode="json")
        return payload


def _format_validation_error(source: str, exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ()))
        parts.append(f"{loc}: {err.get('msg')}")
    return f"{source}: " + "; ".join(parts)


def load_curve_config(path: str | Path) -> CurveConfig:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"曲线配置不存在: {p}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"曲线配置不是合法 JSON: {p}: {exc}") from exc
    try:
        return CurveConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(str(p), exc)) from exc


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """读取 YAML 实验配置；curve 为相对路径时按 YAML 所在目录解析。"""
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"实验配置不存在: {p}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"实验配置不是合法 YAML: {p}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"实验配置顶层必须是 mapping: {p}")
    curve = raw.get("curve")
    if isinstance(curve, str) and not Path(curve).is_absolute():
        raw["curve"] = str((p.parent / curve).resolve())
    try:
        cfg = ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(str(p), exc)) from exc
    cfg.curve_config()
    return cfg


def apply_tolerance_overrides(base: ToleranceConfig, overrides: list[str] | None) -> ToleranceConfig:
    """解析 KEY=VAL 形式的覆盖项。"""
    if not overrides:
        return base
    updates: dict[str, Any] = {}
    for item in overrides:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"--tolerance 需要 KEY=VAL 形式，收到: {item!r}")
        if key not in ToleranceConfig.model_fields:
            known = ", ".join(sorted(ToleranceConfig.model_fields))
            raise ConfigError(f"未知容差 {key!r}；可用: {known}")
        updates[key] = value.strip()
    try:
        return ToleranceConfig.model_validate({**base.model_dump(), **updates})
    except ValidationError as exc:
        raise ConfigError(_format_validation_error("--tolerance", exc)) from exc


def output_dir_from_env() -> Optional[Path]:
    """PENTAFLOW_OUTPUT_DIR：未显式给出输出目录时的回退。"""
    val = os.environ.get("PENTAFLOW_OUTPUT_DIR", "").strip()
    return Path(val) if val else None


def sweep_workers() -> int:
    """PENTAFLOW_SWEEP_WORKERS：扫描线程数，默认 1（顺序执行）。"""
    try:
        return max(1, int(os.environ.get("PENTAFLOW_SWEEP_WORKERS", "1")))
    except ValueError:
        return 1


def log_level() -> str:
    """PENTAFLOW_LOG_LEVEL，默认 WARNING，保持 stdout 只输出结果。"""
    return os.environ.get("PENTAFLOW_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"


__all__ = [
    "MIN_N",
    "ThetaTermConfig",
    "LinearMapConfig",
    "CurveConfig",
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "ExperimentConfig",
    "load_curve_config",
    "load_experiment_config",
    "apply_tolerance_overrides",
    "output_dir_from_env",
    "sweep_workers",
    "log_level",
]
