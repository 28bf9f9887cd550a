"""五角星映射 T 及其迭代。"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from ..errors import DegenerateImage, DegeneratePosition, InvalidPolygon
from .coefficients import all_coefficients
from .polygon import Polygon


def pentagram_map(V: Polygon) -> Polygon:
    """
    T(V)_i = (v_{i-1} v_{i+1}) ∩ (v_i v_{i+2})，按 u_i = A_i v_i + B_i v_{i+2} 计算。

    输出重新做一般位置校验；失败时抛 DegenerateImage。
    """
    quads = all_coefficients(V)
    A = quads[:, 0:1]
    B = quads[:, 1:2]
    image = A * V.vertices + B * np.roll(V.vertices, -2, axis=0)
    try:
        return Polygon(image, convex=V.convex)
    except (DegeneratePosition, InvalidPolygon) as exc:
        raise DegenerateImage(f"T(V) 不满足一般位置: {exc}") from exc


def iterate_pentagram(V: Polygon, steps: int) -> Iterator[Polygon]:
    """依次产出 T(V), T²(V), ..., T^steps(V)；DegenerateImage 带上迭代序号（从 1 起）。"""
    current = V
    for k in range(1, steps + 1):
        try:
            current = pentagram_map(current)
        except DegenerateImage as exc:
            exc.iteration = k
            raise
        yield current


__all__ = ["pentagram_map", "iterate_pentagram"]
