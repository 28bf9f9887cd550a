"""收敛阶拟合：(ln n, ln residual) 上的最小二乘直线。"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Iterable, Sequence

import numpy as np
from sklearn.linear_model import LinearRegression
from sklearn.metrics import r2_score

from .errors import InsufficientData, NonPositiveResidual

MIN_FIT_POINTS = 3


@dataclass(frozen=True)
class ConvergenceFit:
    """residual ≈ exp(intercept) · n^slope。"""

    slope: float
    intercept: float
    r_squared: float
    points: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def fit_line(x: Sequence[float], y: Sequence[float]) -> ConvergenceFit:
    """普通最小二乘 y = slope * x + intercept；r² 截断到 [0, 1]。"""
    xs = np.asarray(x, dtype=float).reshape(-1, 1)
    ys = np.asarray(y, dtype=float)
    if xs.shape[0] < 2 or xs.shape[0] != ys.shape[0]:
        raise InsufficientData(f"直线拟合至少需要 2 个点，实际 {xs.shape[0]}")
    model = LinearRegression().fit(xs, ys)
    r2 = float(r2_score(ys, model.predict(xs)))
    return ConvergenceFit(
        slope=float(model.coef_[0]),
        intercept=float(model.intercept_),
        r_squared=min(1.0, max(0.0, r2)),
        points=int(xs.shape[0]),
    )


def fit_convergence(pairs: Iterable[tuple[int, float]]) -> ConvergenceFit:
    """
    对 (n, residual) 做 log-log 拟合，slope 即经验收敛阶 -p。

    要求至少 3 个点、n 互异、residual 严格为正。
    """
    data = [(float(n), float(r)) for n, r in pairs]
    if len(data) < MIN_FIT_POINTS:
        raise InsufficientData(f"至少需要 {MIN_FIT_POINTS} 个 (n, residual)，实际 {len(data)}")
    ns = np.array([n for n, _ in data])
    if np.unique(ns).size != ns.size:
        raise InsufficientData(f"n 必须互异: {ns.tolist()}")
    if np.any(ns <= 0):
        raise InsufficientData(f"n 必须为正: {ns.tolist()}")
    residuals = np.array([r for _, r in data])
    if not np.all(residuals > 0):
        raise NonPositiveResidual(f"residual 必须严格为正: {residuals.tolist()}")
    return fit_line(np.log(ns), np.log(residuals))


__all__ = ["MIN_FIT_POINTS", "ConvergenceFit", "fit_line", "fit_convergence"]
