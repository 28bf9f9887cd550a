"""不变量实验的结果记录。"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd


@dataclass
class InvariantReport:
    """f(V) 的两种算法：带符号长度交比之积 与 系数比之积。"""

    f_signed: float
    f_coeff: float
    factors: list[float]
    coeff_factors: list[float] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def relative_gap(self) -> float:
        return abs(self.f_signed / self.f_coeff - 1.0)

    def max_factor_gap(self) -> float:
        """逐顶点 |X_i / (B_{i-1}C_i / A_{i-1}D_i) - 1| 的最大值。"""
        x = np.asarray(self.factors, dtype=float)
        y = np.asarray(self.coeff_factors, dtype=float)
        return float(np.max(np.abs(x / y - 1.0)))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "i": np.arange(self.n),
                "factor_signed": self.factors,
                "factor_coeff": self.coeff_factors,
            }
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "f_signed": self.f_signed,
            "f_coeff": self.f_coeff,
            "relative_gap": self.relative_gap,
            "factors": list(self.factors),
            "coeff_factors": list(self.coeff_factors),
        }


@dataclass
class IterationTrace:
    """T 迭代轨迹：每步的直径与不变量漂移，外加 log(diameter) ~ step 的线性拟合。"""

    requested_steps: int
    diameters: list[float] = field(default_factory=list)
    invariant_drift: list[float] = field(default_factory=list)
    log_diameter_slope: float = float("nan")
    r_squared: float = float("nan")
    truncated_at: int | None = None
    error: str | None = None

    @property
    def completed_steps(self) -> int:
        return max(0, len(self.diameters) - 1)

    @property
    def steps(self) -> list[int]:
        return list(range(len(self.diameters)))

    @property
    def truncated(self) -> bool:
        return self.truncated_at is not None

    def ratios(self) -> np.ndarray:
        """diameter(k+1) / diameter(k)。"""
        d = np.asarray(self.diameters, dtype=float)
        return d[1:] / d[:-1]

    def is_strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.diameters) < 0))

    @property
    def max_drift(self) -> float:
        return float(max(self.invariant_drift, default=0.0))

    def to_frame(self) -> pd.DataFrame:
        d = np.asarray(self.diameters, dtype=float)
        return pd.DataFrame(
            {
                "step": self.steps,
                "diameter": d,
                "log_diameter": np.log(d),
                "invariant_drift": self.invariant_drift,
            }
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "requested_steps": self.requested_steps,
            "completed_steps": self.completed_steps,
            "log_diameter_slope": self.log_diameter_slope,
            "r_squared": self.r_squared,
            "truncated_at": self.truncated_at,
            "error": self.error,
            "diameters": list(self.diameters),
            "invariant_drift": list(self.invariant_drift),
        }


__all__ = ["InvariantReport", "IterationTrace"]
