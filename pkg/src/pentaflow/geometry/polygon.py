"""循环有序多边形：构造期校验 n >= 5、有限坐标与一般位置。"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
from numpy.typing import ArrayLike

from ..errors import DegeneratePosition, InvalidPolygon
from .models import Point2
from .primitives import DET_REL_TOL

MIN_VERTICES = 5


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]


def general_position_defect(arr: np.ndarray) -> tuple[int, str] | None:
    """返回第一个破坏一般位置的 (index, 原因)；全部满足时返回 None。"""
    prev = np.roll(arr, 1, axis=0)
    nxt = np.roll(arr, -1, axis=0)
    nxt2 = np.roll(arr, -2, axis=0)

    # [v_{i-1} - v_{i+1}, v_i - v_{i+2}]
    e1 = prev - nxt
    e2 = arr - nxt2
    den = _cross(e1, e2)
    scale = np.linalg.norm(e1, axis=1) * np.linalg.norm(e2, axis=1)
    bad = np.flatnonzero(~(np.abs(den) >= DET_REL_TOL * scale) | (scale == 0.0))
    if bad.size:
        return int(bad[0]), "对角线行列式为零"

    t1 = arr - prev
    t2 = nxt - arr
    turn = _cross(t1, t2)
    tscale = np.linalg.norm(t1, axis=1) * np.linalg.norm(t2, axis=1)
    bad = np.flatnonzero(~(np.abs(turn) >= DET_REL_TOL * tscale) | (tscale == 0.0))
    if bad.size:
        return int(bad[0]), "相邻三点共线"
    return None


@dataclass(frozen=True, eq=False)
class Polygon:
    """
    n 边形 V = (v_0, ..., v_{n-1})，下标按 mod n 循环。

    convex=True 时额外校验所有有向三角形面积同号。
    """

    vertices: np.ndarray
    convex: bool = False
    _diameter: list[float] = field(default_factory=list, init=False, repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.vertices, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidPolygon(f"顶点数组形状应为 (n, 2)，实际为 {arr.shape}")
        n = arr.shape[0]
        if n < MIN_VERTICES:
            raise InvalidPolygon(f"n >= {MIN_VERTICES} required, got n={n}")
        if not np.all(np.isfinite(arr)):
            raise InvalidPolygon("顶点坐标必须为有限值（不允许 NaN / Inf）")
        defect = general_position_defect(arr)
        if defect is not None:
            index, reason = defect
            raise DegeneratePosition(f"顶点 {index} 处不满足一般位置: {reason}", index=index)
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)
        if self.convex and not self.is_convex():
            raise InvalidPolygon("多边形被标记为凸，但有向面积符号不一致")

    @classmethod
    def from_points(cls, points: Iterable[ArrayLike], *, convex: bool = False) -> Polygon:
        return cls(np.array([np.asarray(p, dtype=float) for p in points]), convex=convex)

    @property
    def n(self) -> int:
        return int(self.vertices.shape[0])

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[Point2]:
        for row in self.vertices:
            yield Point2.from_array(row)

    def vertex(self, i: int) -> Point2:
        return Point2.from_array(self.vertices[i % self.n])

    def at(self, i: int) -> np.ndarray:
        """v_{i mod n}（numpy 视图，供内部计算）。"""
        return self.vertices[i % self.n]

    def to_array(self) -> np.ndarray:
        return np.array(self.vertices, copy=True)

    def turn_areas(self) -> np.ndarray:
        """[v_i - v_{i+1}, v_{i+1} - v_{i+2}]，i = 0..n-1。"""
        arr = self.vertices
        nxt = np.roll(arr, -1, axis=0)
        nxt2 = np.roll(arr, -2, axis=0)
        return _cross(arr - nxt, nxt - nxt2)

    def is_convex(self) -> bool:
        areas = self.turn_areas()
        return bool(np.all(areas > 0) or np.all(areas < 0))

    @property
    def signed_area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return float(0.5 * (x @ np.roll(y, -1) - y @ np.roll(x, -1)))

    @property
    def orientation(self) -> int:
        """+1 逆时针，-1 顺时针。"""
        return 1 if self.signed_area > 0 else -1

    @property
    def diameter(self) -> float:
        """最大顶点间距离。"""
        if not self._diameter:
            diff = self.vertices[:, None, :] - self.vertices[None, :, :]
            self._diameter.append(float(np.sqrt((diff**2).sum(axis=-1)).max()))
        return self._diameter[0]

    def transform(self, matrix: ArrayLike, offset: ArrayLike = (0.0, 0.0)) -> Polygon:
        """仿射像 M v + t。"""
        m = np.asarray(matrix, dtype=float)
        t = np.asarray(offset, dtype=float)
        return Polygon(self.vertices @ m.T + t, convex=self.convex)


def regular_polygon(
    n: int,
    *,
    radius: float = 1.0,
    phase: float = 0.0,
    center: ArrayLike = (0.0, 0.0),
) -> Polygon:
    """正 n 边形，v_k = center + radius * (cos(phase + 2πk/n), sin(phase + 2πk/n))。"""
    if n < MIN_VERTICES:
        raise InvalidPolygon(f"n >= {MIN_VERTICES} required, got n={n}")
    angles = phase + 2.0 * math.pi * np.arange(n) / n
    pts = np.column_stack([np.cos(angles), np.sin(angles)]) * radius + np.asarray(center, dtype=float)
    return Polygon(pts, convex=True)


__all__ = ["MIN_VERTICES", "Polygon", "regular_polygon", "general_position_defect"]
