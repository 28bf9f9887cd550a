"""几何层数据模型。"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Iterator

import numpy as np


@dataclass(frozen=True)
class Point2:
    """平面点（也用作二维向量）。"""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Point2 坐标必须为有限值: ({self.x}, {self.y})")

    @classmethod
    def from_array(cls, arr: Any) -> Point2:
        a = np.asarray(arr, dtype=float)
        return cls(float(a[0]), float(a[1]))

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return np.array([self.x, self.y], dtype=dtype or float)

    def distance_to(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


Vector2 = Point2


@dataclass(frozen=True)
class CoefficientQuad:
    """顶点 i 处的 (A, B, C, D)：u_i = A v_i + B v_{i+2} = C v_{i-1} + D v_{i+1}。"""

    A: float
    B: float
    C: float
    D: float

    @property
    def ab_sum(self) -> float:
        return self.A + self.B

    @property
    def cd_sum(self) -> float:
        return self.C + self.D

    def get(self, letter: str) -> float:
        if letter not in ("A", "B", "C", "D"):
            raise KeyError(f"未知系数: {letter}")
        return float(getattr(self, letter))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


__all__ = ["Point2", "Vector2", "CoefficientQuad"]
