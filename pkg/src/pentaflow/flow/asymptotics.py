"""
采样多边形上的渐近残差测量。

所有测量在 x = i / n 处取 W、γ'、γ''；T² 的比较按 T²(V) 第 i-1 个顶点对 v_i。
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from ..geometry import Point2, Polygon, all_coefficients, line_intersection, pentagram_map
from .curves import PeriodicCurve, compute_W, sample_polygon
from .expansions import STATED, ExpansionTable, get_expansion
from .models import AsymptoticsRecord, RecordKind

COEFFICIENT_COLUMNS = {"A": 0, "B": 1, "C": 2, "D": 3}
SHIFT_RANGE = range(-2, 3)


class FlowSample:
    """曲线在给定 n 下的采样 V 及惰性计算的 T(V)、T²(V) 与系数表。"""

    def __init__(self, curve: PeriodicCurve, n: int) -> None:
        self.curve = curve
        self.n = n
        self.polygon = sample_polygon(curve, n)

    @cached_property
    def image(self) -> Polygon:
        return pentagram_map(self.polygon)

    @cached_property
    def image2(self) -> Polygon:
        return pentagram_map(self.image)

    @cached_property
    def quads(self) -> np.ndarray:
        return all_coefficients(self.polygon)

    @cached_property
    def image_quads(self) -> np.ndarray:
        return all_coefficients(self.image)

    def x(self, i: int) -> float:
        return (i % self.n) / self.n

    def local(self, i: int) -> tuple[np.ndarray, np.ndarray, float]:
        """(γ', γ'', W) at x = i / n。"""
        x = self.x(i)
        return self.curve.d1(x), self.curve.d2(x), compute_W(self.curve, x)


def index_for(x: float, n: int) -> int:
    """离 x 最近的顶点下标；恰在两点中间时取右侧，与 n 的奇偶无关。"""
    return math.floor(x * n + 0.5) % n


def _sample(curve: PeriodicCurve, n: int, sample: FlowSample | None) -> FlowSample:
    if sample is None:
        return FlowSample(curve, n)
    if sample.n != n:
        raise ValueError(f"sample.n={sample.n} 与 n={n} 不一致")
    return sample


def _check_shift(k: int) -> int:
    if int(k) != k:
        raise ValueError(f"采样多边形只支持整数平移 k，收到 {k}")
    return int(k)


def coefficient_asymptotics(
    curve: PeriodicCurve,
    n: int,
    i: int,
    k: int = 0,
    *,
    expansion: ExpansionTable | str = STATED,
    sample: FlowSample | None = None,
) -> tuple[AsymptoticsRecord, AsymptoticsRecord]:
    """B_{i+k}、C_{i+k} 相对 1/4 + b_w W/n、1/4 + c_w W/n 的残差（W 取在 i/n）。"""
    table = get_expansion(expansion)
    s = _sample(curve, n, sample)
    k = _check_shift(k)
    i = i % n
    W = compute_W(curve, s.x(i))
    _, B, C, _ = s.quads[(i + k) % n]
    pb, pc = table.predicted_b(W, n), table.predicted_c(W, n)
    return (
        AsymptoticsRecord(RecordKind.COEFF_B, n, i, B, pb, abs(B - pb), table.name, "B", k),
        AsymptoticsRecord(RecordKind.COEFF_C, n, i, C, pc, abs(C - pc), table.name, "C", k),
    )


def t_stability(
    curve: PeriodicCurve,
    n: int,
    i: int,
    coefficient: str = "B",
    *,
    sample: FlowSample | None = None,
) -> AsymptoticsRecord:
    """|T(X)_i - X_i|，X ∈ {A, B, C, D}，T(X) 在 T(V) 上计算。"""
    if coefficient not in COEFFICIENT_COLUMNS:
        raise ValueError(f"未知系数 {coefficient!r}")
    s = _sample(curve, n, sample)
    i = i % n
    col = COEFFICIENT_COLUMNS[coefficient]
    mapped = float(s.image_quads[i, col])
    original = float(s.quads[i, col])
    return AsymptoticsRecord(
        RecordKind.T_STABILITY, n, i, mapped, original, abs(mapped - original), "exact", coefficient
    )


def shift_stability(
    curve: PeriodicCurve,
    n: int,
    i: int,
    k: int,
    *,
    sample: FlowSample | None = None,
) -> tuple[AsymptoticsRecord, AsymptoticsRecord]:
    """|B_{i+k} - B_i| 与 |C_{i+k} - C_i|，应为 O(1/n²)。"""
    s = _sample(curve, n, sample)
    k = _check_shift(k)
    i = i % n
    _, B0, C0, _ = s.quads[i]
    _, Bk, Ck, _ = s.quads[(i + k) % n]
    return (
        AsymptoticsRecord(RecordKind.SHIFT_B, n, i, Bk, B0, abs(Bk - B0), "exact", "B", k),
        AsymptoticsRecord(RecordKind.SHIFT_C, n, i, Ck, C0, abs(Ck - C0), "exact", "C", k),
    )


def evolution_residual(
    curve: PeriodicCurve,
    n: int,
    i: int,
    *,
    expansion: ExpansionTable | str = STATED,
    sample: FlowSample | None = None,
) -> AsymptoticsRecord:
    """n²(T²(V)_{i-1} - v_i) 对 ev_dd γ'' + ev_w W γ' 的残差。"""
    table = get_expansion(expansion)
    s = _sample(curve, n, sample)
    i = i % n
    g1, g2, W = s.local(i)
    lhs = n**2 * (s.image2.at(i - 1) - s.polygon.at(i))
    predicted = table.evolution_rhs(g1, g2, W)
    return AsymptoticsRecord(
        RecordKind.EVOLUTION, n, i, lhs, predicted, float(np.linalg.norm(lhs - predicted)), table.name
    )


def schwartz_p_point(V: Polygon, i: int) -> Point2:
    """p_i = (v_{i-2} v_{i+1}) ∩ (v_{i-1} v_{i+2})。"""
    return line_intersection(V.at(i - 2), V.at(i + 1), V.at(i - 1), V.at(i + 2))


def p_point_residual(
    curve: PeriodicCurve,
    n: int,
    i: int,
    *,
    expansion: ExpansionTable | str = STATED,
    sample: FlowSample | None = None,
) -> AsymptoticsRecord:
    """n²(p_i - γ(i/n)) 对 p_dd γ'' + p_w W γ' 的残差。"""
    table = get_expansion(expansion)
    s = _sample(curve, n, sample)
    i = i % n
    g1, g2, W = s.local(i)
    p = np.asarray(schwartz_p_point(s.polygon, i))
    lhs = n**2 * (p - s.polygon.at(i))
    predicted = table.p_point_rhs(g1, g2, W)
    return AsymptoticsRecord(
        RecordKind.P_POINT, n, i, lhs, predicted, float(np.linalg.norm(lhs - predicted)), table.name
    )


def corollary35_residual(
    curve: PeriodicCurve,
    n: int,
    i: int,
    *,
    expansion: ExpansionTable | str = STATED,
    sample: FlowSample | None = None,
) -> AsymptoticsRecord:
    """‖T²(V)_{i-1} - p_i - (cor_dd γ'' + cor_w W γ') / n²‖，不乘 n²。"""
    table = get_expansion(expansion)
    s = _sample(curve, n, sample)
    i = i % n
    g1, g2, W = s.local(i)
    p = np.asarray(schwartz_p_point(s.polygon, i))
    lhs = s.image2.at(i - 1) - p
    predicted = table.corollary_rhs(g1, g2, W, n)
    return AsymptoticsRecord(
        RecordKind.COROLLARY, n, i, lhs, predicted, float(np.linalg.norm(lhs - predicted)), table.name
    )


def schwartz_gap_limit(curve: PeriodicCurve, x: float, expansion: ExpansionTable | str = STATED) -> float:
    """
    |演化方程右端 - p_i 展开右端|。

    把演化残差的预测换成 γ'' - (2/3)Wγ' 后，残差在 n -> ∞ 时收敛到按真实演化系数
    （REDERIVED）算出的这个值。
    """
    table = get_expansion(expansion)
    g1, g2, W = curve.d1(x), curve.d2(x), compute_W(curve, x)
    return float(np.linalg.norm(table.evolution_rhs(g1, g2, W) - table.p_point_rhs(g1, g2, W)))


__all__ = [
    "SHIFT_RANGE",
    "FlowSample",
    "index_for",
    "coefficient_asymptotics",
    "t_stability",
    "shift_stability",
    "evolution_residual",
    "schwartz_p_point",
    "p_point_residual",
    "corollary35_residual",
    "schwartz_gap_limit",
]
