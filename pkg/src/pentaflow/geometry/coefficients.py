"""顶点系数 (A, B, C, D)：u_i = A v_i + B v_{i+2} = C v_{i-1} + D v_{i+1}。"""

from __future__ import annotations

import numpy as np

from ..errors import DegeneratePosition
from .models import CoefficientQuad, Point2
from .polygon import Polygon
from .primitives import DET_REL_TOL, det2, line_intersection


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def all_coefficients(V: Polygon) -> np.ndarray:
    """
    一次性计算所有顶点的系数，返回形状 (n, 4) 的数组，列顺序 A, B, C, D。

    a, b, c, d = v_{i-1}, v_i, v_{i+1}, v_{i+2}；公共分母 [a - c, b - d]。
    """
    b = V.vertices
    a = np.roll(b, 1, axis=0)
    c = np.roll(b, -1, axis=0)
    d = np.roll(b, -2, axis=0)

    den = _cross(a - c, b - d)
    scale = np.linalg.norm(a - c, axis=1) * np.linalg.norm(b - d, axis=1)
    bad = np.flatnonzero(~(np.abs(den) >= DET_REL_TOL * scale))
    if bad.size:
        i = int(bad[0])
        raise DegeneratePosition(f"顶点 {i} 的系数分母为零: det={den[i]:.3e}", index=i)

    A = _cross(a - c, c - d) / den
    B = _cross(a - b, b - c) / den
    C = _cross(b - c, c - d) / den
    D = _cross(a - b, b - d) / den
    return np.column_stack([A, B, C, D])


def coefficients(V: Polygon, i: int) -> CoefficientQuad:
    """单个顶点 i（mod n）的系数。"""
    a, b, c, d = (V.at(i + k) for k in (-1, 0, 1, 2))
    den = det2(a - c, b - d)
    scale = float(np.linalg.norm(a - c) * np.linalg.norm(b - d))
    if not abs(den) >= DET_REL_TOL * scale:
        raise DegeneratePosition(f"顶点 {i % V.n} 的系数分母为零: det={den:.3e}", index=i % V.n)
    return CoefficientQuad(
        A=det2(a - c, c - d) / den,
        B=det2(a - b, b - c) / den,
        C=det2(b - c, c - d) / den,
        D=det2(a - b, b - d) / den,
    )


def vertex_two_ways(V: Polygon, i: int) -> tuple[Point2, Point2, Point2]:
    """(A v_i + B v_{i+2}, C v_{i-1} + D v_{i+1}, 直线求交)，三者应一致。"""
    q = coefficients(V, i)
    via_ab = q.A * V.at(i) + q.B * V.at(i + 2)
    via_cd = q.C * V.at(i - 1) + q.D * V.at(i + 1)
    direct = line_intersection(V.at(i - 1), V.at(i + 1), V.at(i), V.at(i + 2))
    return Point2.from_array(via_ab), Point2.from_array(via_cd), direct


__all__ = ["all_coefficients", "coefficients", "vertex_two_ways"]
