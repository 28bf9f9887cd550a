"""系数在 T 下的精确传递恒等式。"""

from __future__ import annotations

import numpy as np
import pandas as pd

from ..errors import DegeneratePosition
from ..geometry import Polygon, all_coefficients, coefficients, pentagram_map
from ..geometry.primitives import DET_REL_TOL


def _image(V: Polygon, image: Polygon | None) -> Polygon:
    return image if image is not None else pentagram_map(V)


def ratio_transport_check(V: Polygon, i: int, *, image: Polygon | None = None) -> tuple[float, float]:
    """
    返回两个残差：

    |T(C)_i / T(A)_i - C_i / A_{i-1}| 与 |T(B)_i / T(D)_i - B_{i+1} / D_{i+2}|，
    其中 T(·) 表示在 T(V) 上计算的系数。
    """
    mapped = coefficients(_image(V, image), i)
    q = {k: coefficients(V, i + k) for k in (-1, 0, 1, 2)}
    first = abs(mapped.C / mapped.A - q[0].C / q[-1].A)
    second = abs(mapped.B / mapped.D - q[1].B / q[2].D)
    return float(first), float(second)


def ratio_transport_sweep(V: Polygon, *, image: Polygon | None = None) -> pd.DataFrame:
    """所有顶点的两组比值及其残差（按 i 升序）。"""
    quads = all_coefficients(V)
    mapped = all_coefficients(_image(V, image))
    A, B, C, D = quads.T
    TA, TB, TC, TD = mapped.T

    c_over_a = TC / TA
    c_over_a_expected = C / np.roll(A, 1)
    b_over_d = TB / TD
    b_over_d_expected = np.roll(B, -1) / np.roll(D, -2)
    return pd.DataFrame(
        {
            "i": np.arange(V.n),
            "c_over_a": c_over_a,
            "c_over_a_expected": c_over_a_expected,
            "c_over_a_residual": np.abs(c_over_a - c_over_a_expected),
            "b_over_d": b_over_d,
            "b_over_d_expected": b_over_d_expected,
            "b_over_d_residual": np.abs(b_over_d - b_over_d_expected),
        }
    )


def mapped_coefficient_formula(V: Polygon, i: int) -> float:
    """(D_i - B_{i-1}) B_{i+1} / (A_{i-1} D_{i+2} - B_{i+1} C_i)，即 T(V) 在 i 处的 B 系数。"""
    q = {k: coefficients(V, i + k) for k in (-1, 0, 1, 2)}
    lead = q[-1].A * q[2].D
    cross = q[1].B * q[0].C
    den = lead - cross
    if not abs(den) >= DET_REL_TOL * max(abs(lead), abs(cross)):
        raise DegeneratePosition(f"顶点 {i % V.n} 处恒等式分母为零: {den:.3e}", index=i % V.n)
    return float((q[0].D - q[-1].B) * q[1].B / den)


def mapped_coefficient_identity(V: Polygon, i: int, *, image: Polygon | None = None) -> float:
    """|T(B)_i - (D_i - B_{i-1}) B_{i+1} / (A_{i-1} D_{i+2} - B_{i+1} C_i)|。"""
    mapped = coefficients(_image(V, image), i)
    return abs(mapped.B - mapped_coefficient_formula(V, i))


__all__ = [
    "ratio_transport_check",
    "ratio_transport_sweep",
    "mapped_coefficient_formula",
    "mapped_coefficient_identity",
]
