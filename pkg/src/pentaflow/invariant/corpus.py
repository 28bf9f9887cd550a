"""可复现的随机凸多边形语料。"""

from __future__ import annotations

from typing import Iterator

import numpy as np
from loguru import logger

from ..errors import GeometryError, InvalidPolygon
from ..geometry import MIN_VERTICES, Polygon

MAX_ATTEMPTS = 100


def _chain_steps(sorted_values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """把有序坐标随机拆成两条从最小值到最大值的链，返回各段增量（总和为 0）。"""
    lo, hi = sorted_values[0], sorted_values[-1]
    last_top = last_bottom = lo
    steps: list[float] = []
    for value in sorted_values[1:-1]:
        if rng.random() < 0.5:
            steps.append(value - last_top)
            last_top = value
        else:
            steps.append(last_bottom - value)
            last_bottom = value
    steps.append(hi - last_top)
    steps.append(last_bottom - hi)
    return np.asarray(steps, dtype=float)


def random_convex_polygon(n: int, rng: np.random.Generator) -> Polygon:
    """
    Valtr 构造：x、y 坐标各自拆链得到边向量，随机配对后按极角排序并累加。

    结果逆时针、中心在原点、最大顶点模长为 1。不满足一般位置的样本重抽。
    """
    if n < MIN_VERTICES:
        raise InvalidPolygon(f"n >= {MIN_VERTICES} required, got n={n}")
    for attempt in range(1, MAX_ATTEMPTS + 1):
        dx = _chain_steps(np.sort(rng.random(n)), rng)
        dy = _chain_steps(np.sort(rng.random(n)), rng)
        rng.shuffle(dy)
        edges = np.column_stack([dx, dy])
        edges = edges[np.argsort(np.arctan2(edges[:, 1], edges[:, 0]), kind="stable")]
        pts = np.cumsum(edges, axis=0)
        pts -= pts.mean(axis=0)
        pts /= np.linalg.norm(pts, axis=1).max()
        try:
            return Polygon(pts, convex=True)
        except GeometryError as exc:
            logger.debug(f"随机凸 {n} 边形第 {attempt} 次采样被拒: {exc}")
    raise InvalidPolygon(f"{MAX_ATTEMPTS} 次采样内未得到一般位置的凸 {n} 边形")


def convex_corpus(
    count: int,
    *,
    n_range: tuple[int, int] = (5, 20),
    seed: int = 0,
) -> Iterator[Polygon]:
    """固定种子的语料：n 在闭区间 n_range 内均匀抽取。"""
    lo, hi = n_range
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_convex_polygon(int(rng.integers(lo, hi + 1)), rng)


__all__ = ["random_convex_polygon", "convex_corpus"]
