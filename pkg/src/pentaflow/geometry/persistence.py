"""多边形 CSV：每行一个顶点 `x,y`，无表头，17 位有效数字。"""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from ..errors import InvalidPolygon
from .polygon import Polygon

FLOAT_FORMAT = "%.17g"


def read_polygon_csv(path: str | Path, *, convex: bool = False) -> Polygon:
    p = Path(path)
    try:
        df = pd.read_csv(p, header=None, float_precision="round_trip", encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise InvalidPolygon(f"无法解析多边形文件 {p}: {exc}") from exc
    if df.shape[1] != 2:
        raise InvalidPolygon(f"{p}: 每行应为 x,y 两列，实际 {df.shape[1]} 列")
    try:
        values = df.astype(float).to_numpy()
    except ValueError as exc:
        raise InvalidPolygon(f"{p}: 含非数值坐标: {exc}") from exc
    return Polygon(values, convex=convex)


def write_polygon_csv(V: Polygon, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(V.to_array(), columns=["x", "y"])
    frame.to_csv(p, header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return p


__all__ = ["FLOAT_FORMAT", "read_polygon_csv", "write_polygon_csv"]
