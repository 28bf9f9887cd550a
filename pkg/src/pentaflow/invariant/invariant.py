"""不变量 f(V) 的两种独立计算与 T 下的不变性检查。"""

from __future__ import annotations

import numpy as np

from ..geometry import Polygon, all_coefficients, pentagram_map, signed_length
from .models import InvariantReport


def coefficient_factors(V: Polygon) -> np.ndarray:
    """B_{i-1} C_i / (A_{i-1} D_i)，i = 0..n-1。"""
    quads = all_coefficients(V)
    A, B, C, D = quads.T
    return np.roll(B, 1) * C / (np.roll(A, 1) * D)


def coefficient_product(V: Polygon) -> float:
    return float(np.prod(coefficient_factors(V)))


def signed_factors(V: Polygon, image: Polygon) -> list[float]:
    """
    X_i = |v_{i-1} u_{i-1}| |u_i v_{i+1}| / (|v_{i-1} u_i| |u_{i-1} v_{i+1}|)。

    四个点都在直线 (v_{i-1} v_{i+1}) 上，沿 v_{i-1} -> v_{i+1} 方向取带符号长度。
    """
    factors: list[float] = []
    for i in range(V.n):
        v_prev, v_next = V.at(i - 1), V.at(i + 1)
        u_prev, u_cur = image.at(i - 1), image.at(i)

        def sl(a: np.ndarray, b: np.ndarray) -> float:
            return signed_length(v_prev, v_next, a, b)

        num = sl(v_prev, u_prev) * sl(u_cur, v_next)
        den = sl(v_prev, u_cur) * sl(u_prev, v_next)
        factors.append(num / den)
    return factors


def invariant_f(V: Polygon) -> InvariantReport:
    image = pentagram_map(V)
    factors = signed_factors(V, image)
    coeff = coefficient_factors(V)
    return InvariantReport(
        f_signed=float(np.prod(factors)),
        f_coeff=float(np.prod(coeff)),
        factors=factors,
        coeff_factors=coeff.tolist(),
    )


def check_invariance(V: Polygon) -> float:
    """|f(T(V)) / f(V) - 1|。"""
    return abs(coefficient_product(pentagram_map(V)) / coefficient_product(V) - 1.0)


__all__ = [
    "coefficient_factors",
    "coefficient_product",
    "signed_factors",
    "invariant_f",
    "check_invariance",
]
