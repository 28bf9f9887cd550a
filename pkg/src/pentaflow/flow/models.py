"""渐近残差记录。"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
import pandas as pd


class RecordKind(str, Enum):
    COEFF_B = "coeffB"
    COEFF_C = "coeffC"
    T_STABILITY = "tStability"
    EVOLUTION = "evolution"
    P_POINT = "pPoint"
    COROLLARY = "corollary35"
    SHIFT_B = "shiftB"
    SHIFT_C = "shiftC"


@dataclass
class AsymptoticsRecord:
    """一次 (n, i) 残差测量。lhs / predicted 为标量或二维向量，按元组保存。"""

    kind: RecordKind
    n: int
    i: int
    lhs: tuple[float, ...]
    predicted: tuple[float, ...]
    residual: float
    expansion: str = "stated"
    component: str = ""
    k: int = 0
    # 扫描时请求的测量位置；各 n 上的 i 可能不同，拟合按它分组
    x_target: float | None = None

    def __post_init__(self) -> None:
        self.kind = RecordKind(self.kind)
        self.lhs = tuple(float(v) for v in np.atleast_1d(self.lhs))
        self.predicted = tuple(float(v) for v in np.atleast_1d(self.predicted))
        if len(self.lhs) != len(self.predicted):
            raise ValueError(f"lhs 与 predicted 维数不一致: {len(self.lhs)} vs {len(self.predicted)}")
        if not self.residual >= 0:
            raise ValueError(f"residual 必须非负: {self.residual}")

    @property
    def x(self) -> float:
        return self.i / self.n

    @property
    def location(self) -> float:
        return self.x if self.x_target is None else self.x_target

    def sort_key(self) -> tuple[str, int, int, str, int, float]:
        return (self.kind.value, self.n, self.i, self.component, self.k, self.location)

    def to_row(self) -> dict[str, Any]:
        lhs = list(self.lhs) + [float("nan")] * (2 - len(self.lhs))
        pred = list(self.predicted) + [float("nan")] * (2 - len(self.predicted))
        return {
            "kind": self.kind.value,
            "component": self.component,
            "k": self.k,
            "n": self.n,
            "i": self.i,
            "x": self.x,
            "lhs_0": lhs[0],
            "lhs_1": lhs[1],
            "predicted_0": pred[0],
            "predicted_1": pred[1],
            "residual": self.residual,
            "expansion": self.expansion,
            "x_target": self.location,
        }

    def to_dict(self) -> dict[str, Any]:
        row = self.to_row()
        row["lhs"] = list(self.lhs)
        row["predicted"] = list(self.predicted)
        return row


RECORD_COLUMNS = [
    "kind",
    "component",
    "k",
    "n",
    "i",
    "x",
    "lhs_0",
    "lhs_1",
    "predicted_0",
    "predicted_1",
    "residual",
    "expansion",
    "x_target",
]


def records_to_frame(records: list[AsymptoticsRecord]) -> pd.DataFrame:
    """按 (kind, n, i) 排序的残差表。"""
    ordered = sorted(records, key=AsymptoticsRecord.sort_key)
    return pd.DataFrame([r.to_row() for r in ordered], columns=RECORD_COLUMNS)


__all__ = ["RecordKind", "AsymptoticsRecord", "RECORD_COLUMNS", "records_to_frame"]
