"""周期为 1 的参数曲线、解析导数、有限差分对照与 W。"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..config import CurveConfig, load_curve_config
from ..errors import ConfigError, InvalidPolygon, VanishingCurvature
from ..geometry import MIN_VERTICES, Point2, Polygon
from ..geometry.primitives import det2

TWO_PI = 2.0 * math.pi

# 有限差分对照的固定参数
FD_STEP = 1e-3
CURVATURE_REL_TOL = 1e-14


class PeriodicCurve(ABC):
    """γ: R -> R²，γ(x + 1) = γ(x)。points / derivative 对 x 向量化。"""

    @abstractmethod
    def points(self, xs: ArrayLike) -> np.ndarray:
        """形状 (m, 2) 的 γ(xs)。"""

    @abstractmethod
    def derivative(self, order: int, xs: ArrayLike) -> np.ndarray:
        """形状 (m, 2) 的 γ^(order)(xs)，order ∈ {1, 2, 3}。"""

    def eval(self, x: float) -> Point2:
        return Point2.from_array(self.points([x])[0])

    def d1(self, x: float) -> np.ndarray:
        return self.derivative(1, [x])[0]

    def d2(self, x: float) -> np.ndarray:
        return self.derivative(2, [x])[0]

    def d3(self, x: float) -> np.ndarray:
        return self.derivative(3, [x])[0]


@dataclass(frozen=True)
class ThetaTerm:
    amp: float
    freq: int
    phase: float = 0.0
    kind: str = "cos"

    def __post_init__(self) -> None:
        if self.kind not in ("cos", "sin"):
            raise ValueError(f"kind 必须是 cos 或 sin: {self.kind}")
        if self.freq < 1:
            raise ValueError(f"freq 必须为正整数: {self.freq}")

    def derivative(self, order: int, xs: np.ndarray) -> np.ndarray:
        """amp * kind(ωx + φ) 的 order 阶导数：ω^k * kind(ωx + φ + kπ/2)。"""
        omega = TWO_PI * self.freq
        arg = omega * xs + self.phase + order * math.pi / 2.0
        base = np.cos(arg) if self.kind == "cos" else np.sin(arg)
        return self.amp * omega**order * base


class ThetaFourierCurve(PeriodicCurve):
    """
    γ(x) = (cos θ(x), sin θ(x))，θ(x) = 2πx + Σ amp * kind(2π freq x + phase)。

    导数按链式法则解析给出（e_r = (cos θ, sin θ)，e_t = (-sin θ, cos θ)）：
      γ'   = θ' e_t
      γ''  = θ'' e_t - θ'² e_r
      γ''' = (θ''' - θ'³) e_t - 3 θ' θ'' e_r
    """

    def __init__(self, terms: Sequence[ThetaTerm] = (), *, name: str | None = None) -> None:
        self.terms = tuple(terms)
        self.name = name or ("unit_circle" if not self.terms else "theta_fourier")

    def __repr__(self) -> str:
        return f"ThetaFourierCurve(name={self.name!r}, terms={len(self.terms)})"

    def theta(self, xs: ArrayLike, order: int = 0) -> np.ndarray:
        x = np.asarray(xs, dtype=float)
        if order == 0:
            out = TWO_PI * x
        elif order == 1:
            out = np.full_like(x, TWO_PI)
        else:
            out = np.zeros_like(x)
        for term in self.terms:
            out = out + term.derivative(order, x)
        return out

    def _frame(self, xs: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        th = self.theta(xs)
        e_r = np.column_stack([np.cos(th), np.sin(th)])
        e_t = np.column_stack([-np.sin(th), np.cos(th)])
        return e_r, e_t

    def points(self, xs: ArrayLike) -> np.ndarray:
        e_r, _ = self._frame(xs)
        return e_r

    def derivative(self, order: int, xs: ArrayLike) -> np.ndarray:
        e_r, e_t = self._frame(xs)
        t1 = self.theta(xs, 1)[:, None]
        if order == 1:
            return t1 * e_t
        t2 = self.theta(xs, 2)[:, None]
        if order == 2:
            return t2 * e_t - t1**2 * e_r
        if order == 3:
            t3 = self.theta(xs, 3)[:, None]
            return (t3 - t1**3) * e_t - 3.0 * t1 * t2 * e_r
        raise ValueError(f"只支持 1..3 阶导数，收到 {order}")


class LinearImageCurve(PeriodicCurve):
    """M γ + t（M 可逆）。导数只经过线性部分。"""

    def __init__(self, base: PeriodicCurve, matrix: ArrayLike, offset: ArrayLike = (0.0, 0.0)) -> None:
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)
        self.offset = np.asarray(offset, dtype=float)
        if self.matrix.shape != (2, 2) or abs(np.linalg.det(self.matrix)) == 0.0:
            raise ValueError(f"matrix 必须是可逆 2x2 矩阵: {self.matrix.tolist()}")
        self.name = f"linear({getattr(base, 'name', 'curve')})"

    def points(self, xs: ArrayLike) -> np.ndarray:
        return self.base.points(xs) @ self.matrix.T + self.offset

    def derivative(self, order: int, xs: ArrayLike) -> np.ndarray:
        return self.base.derivative(order, xs) @ self.matrix.T


class FiniteDifferenceCurve(PeriodicCurve):
    """
    只用 base.points 的有限差分导数（对照用）。

    五点中心差分，步长 h，再做一层 Richardson 外推（h 与 2h）。
    """

    def __init__(self, base: PeriodicCurve, h: float = FD_STEP) -> None:
        self.base = base
        self.h = h
        self.name = f"fd({getattr(base, 'name', 'curve')})"

    def points(self, xs: ArrayLike) -> np.ndarray:
        return self.base.points(xs)

    def _stencil(self, order: int, x: np.ndarray, h: float) -> np.ndarray:
        f = {k: self.base.points(x + k * h) for k in (-2, -1, 0, 1, 2)}
        if order == 1:
            return (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * h)
        if order == 2:
            return (-f[2] + 16 * f[1] - 30 * f[0] + 16 * f[-1] - f[-2]) / (12 * h**2)
        if order == 3:
            return (f[2] - 2 * f[1] + 2 * f[-1] - f[-2]) / (2 * h**3)
        raise ValueError(f"只支持 1..3 阶导数，收到 {order}")

    def derivative(self, order: int, xs: ArrayLike) -> np.ndarray:
        x = np.asarray(xs, dtype=float)
        fine = self._stencil(order, x, self.h)
        coarse = self._stencil(order, x, 2 * self.h)
        # 1、2 阶模板误差 O(h⁴)，3 阶为 O(h²)
        weight = 4.0 if order == 3 else 16.0
        return (weight * fine - coarse) / (weight - 1.0)


def compute_W(curve: PeriodicCurve, x: float) -> float:
    """W = det(γ', γ''') / det(γ', γ'')。"""
    g1, g2, g3 = curve.d1(x), curve.d2(x), curve.d3(x)
    den = det2(g1, g2)
    speed = float(np.linalg.norm(g1))
    if not abs(den) >= CURVATURE_REL_TOL * speed**3:
        raise VanishingCurvature(f"x={x:.6g} 处 det(γ', γ'') = {den:.3e} 近似为零，W 无定义")
    return det2(g1, g3) / den


def compute_W_many(curve: PeriodicCurve, xs: ArrayLike) -> np.ndarray:
    """compute_W 的向量化版本。"""
    x = np.asarray(xs, dtype=float)
    g1, g2, g3 = (curve.derivative(k, x) for k in (1, 2, 3))
    den = g1[:, 0] * g2[:, 1] - g1[:, 1] * g2[:, 0]
    num = g1[:, 0] * g3[:, 1] - g1[:, 1] * g3[:, 0]
    speed = np.linalg.norm(g1, axis=1)
    bad = np.flatnonzero(~(np.abs(den) >= CURVATURE_REL_TOL * speed**3))
    if bad.size:
        raise VanishingCurvature(f"x={x[bad[0]]:.6g} 处 det(γ', γ'') 近似为零，W 无定义")
    return num / den


def sample_polygon(curve: PeriodicCurve, n: int) -> Polygon:
    """v_i = γ(i / n)，i = 0..n-1。"""
    if n < MIN_VERTICES:
        raise InvalidPolygon(f"n >= {MIN_VERTICES} required, got n={n}")
    return Polygon(curve.points(np.arange(n) / n))


def curve_from_config(config: CurveConfig | Mapping[str, Any]) -> PeriodicCurve:
    if not isinstance(config, CurveConfig):
        try:
            config = CurveConfig.model_validate(config)
        except ValueError as exc:
            raise ConfigError(f"曲线配置无效: {exc}") from exc
    terms = [ThetaTerm(t.amp, t.freq, t.phase, t.kind) for t in config.terms]
    curve: PeriodicCurve = ThetaFourierCurve(terms, name=config.name)
    if config.linear is not None:
        curve = LinearImageCurve(curve, config.linear.matrix, config.linear.offset)
    return curve


def load_curve(path: str | Path) -> PeriodicCurve:
    return curve_from_config(load_curve_config(path))


def figure3_curve() -> ThetaFourierCurve:
    """θ(x) = 2πx + 0.1 cos 2πx + 0.07 sin(4πx + π/3) + 0.1 cos(6πx + π/5)。"""
    return ThetaFourierCurve(
        [
            ThetaTerm(0.1, 1, 0.0, "cos"),
            ThetaTerm(0.07, 2, math.pi / 3, "sin"),
            ThetaTerm(0.1, 3, math.pi / 5, "cos"),
        ],
        name="figure3",
    )


def unit_circle() -> ThetaFourierCurve:
    return ThetaFourierCurve([], name="unit_circle")


__all__ = [
    "FD_STEP",
    "PeriodicCurve",
    "ThetaTerm",
    "ThetaFourierCurve",
    "LinearImageCurve",
    "FiniteDifferenceCurve",
    "compute_W",
    "compute_W_many",
    "sample_polygon",
    "curve_from_config",
    "load_curve",
    "figure3_curve",
    "unit_circle",
]
