"""行列式、直线求交与带符号长度。"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ..errors import NotCollinear, ParallelLines
from .models import Point2

# 相对行列式阈值，按操作数模长缩放
DET_REL_TOL = 1e-14
COLLINEAR_REL_TOL = 1e-9


def det2(u: ArrayLike, v: ArrayLike) -> float:
    """[u, v] = u.x * v.y - u.y * v.x"""
    ux, uy = np.asarray(u, dtype=float)
    vx, vy = np.asarray(v, dtype=float)
    return float(ux * vy - uy * vx)


def line_intersection(p1: ArrayLike, p2: ArrayLike, q1: ArrayLike, q2: ArrayLike) -> Point2:
    """直线 (p1 p2) 与 (q1 q2) 的交点，以 det2 为主元解 2x2 线性方程组。"""
    p1 = np.asarray(p1, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    r = np.asarray(p2, dtype=float) - p1
    s = np.asarray(q2, dtype=float) - q1
    denom = det2(r, s)
    scale = float(np.linalg.norm(r) * np.linalg.norm(s))
    if scale == 0.0 or abs(denom) < DET_REL_TOL * scale:
        raise ParallelLines(
            f"直线平行或退化: det={denom:.3e}, scale={scale:.3e}（多边形可能退化）"
        )
    t = det2(q1 - p1, s) / denom
    return Point2.from_array(p1 + t * r)


def signed_length(origin: ArrayLike, direction_end: ArrayLike, a: ArrayLike, b: ArrayLike) -> float:
    """
    沿直线 (origin -> direction_end) 方向度量的 a - b 带符号长度。

    a、b 到直线的横向偏差必须不超过 1e-9 * 线段长度。
    """
    o = np.asarray(origin, dtype=float)
    d = np.asarray(direction_end, dtype=float) - o
    length = float(np.linalg.norm(d))
    if length == 0.0:
        raise NotCollinear("方向线段长度为零")
    unit = d / length
    for name, p in (("a", a), ("b", b)):
        deviation = abs(det2(unit, np.asarray(p, dtype=float) - o))
        if deviation > COLLINEAR_REL_TOL * length:
            raise NotCollinear(
                f"点 {name} 偏离直线 {deviation:.3e} > {COLLINEAR_REL_TOL:g} * {length:.3e}"
            )
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return float(diff @ unit)


__all__ = [
    "DET_REL_TOL",
    "COLLINEAR_REL_TOL",
    "det2",
    "line_intersection",
    "signed_length",
]
