"""两条曲线 |n² T²(v_{i-1})| 与 |n² γ + RHS| 的逐点数据及其最大间距。"""

from __future__ import annotations

from typing import Iterable, Literal

import numpy as np
import pandas as pd

from ..config import DEFAULT_TOLERANCES, ToleranceConfig
from .asymptotics import FlowSample
from .curves import PeriodicCurve, compute_W_many
from .expansions import STATED, ExpansionTable, get_expansion

Variant = Literal["corrected", "schwartz"]
Which = Literal["fig3", "fig4"]

FIGURE_COLUMNS = ["x", "t2_norm", "rhs_norm", "gap"]
FIGURE_VARIANT: dict[str, Variant] = {"fig3": "corrected", "fig4": "schwartz"}


def figure_data(
    curve: PeriodicCurve,
    n: int,
    variant: Variant = "corrected",
    *,
    expansion: ExpansionTable | str = STATED,
    sample: FlowSample | None = None,
) -> pd.DataFrame:
    """
    每个 i = 0..n-1 一行：x = i/n, |n² T²(V)_{i-1}|, |n² γ(x) + RHS(x)|, 两者之差的绝对值。

    corrected 用展开表的演化方程右端；schwartz 用 p_i 的展开 γ'' - (2/3)Wγ'。
    """
    if variant not in ("corrected", "schwartz"):
        raise ValueError(f"未知 variant {variant!r}")
    table = get_expansion(expansion)
    s = sample if sample is not None else FlowSample(curve, n)
    xs = np.arange(n) / n
    gamma = s.polygon.to_array()
    g1 = curve.derivative(1, xs)
    g2 = curve.derivative(2, xs)
    W = compute_W_many(curve, xs)[:, None]
    if variant == "corrected":
        rhs = table.ev_dd * g2 + table.ev_w * W * g1
    else:
        rhs = table.p_dd * g2 + table.p_w * W * g1

    t2_prev = np.roll(s.image2.to_array(), 1, axis=0)
    t2_norm = np.linalg.norm(n**2 * t2_prev, axis=1)
    rhs_norm = np.linalg.norm(n**2 * gamma + rhs, axis=1)
    return pd.DataFrame(
        {"x": xs, "t2_norm": t2_norm, "rhs_norm": rhs_norm, "gap": np.abs(t2_norm - rhs_norm)},
        columns=FIGURE_COLUMNS,
    )


def max_gap(frame: pd.DataFrame) -> float:
    return float(frame["gap"].max())


def figure_summary(
    curve: PeriodicCurve,
    n_values: Iterable[int],
    which: Which,
    *,
    expansion: ExpansionTable | str = STATED,
) -> tuple[dict[int, pd.DataFrame], pd.DataFrame]:
    """逐 n 的 figure_data 以及 (n, max_gap) 汇总表。"""
    variant = FIGURE_VARIANT[which]
    frames = {n: figure_data(curve, n, variant, expansion=expansion) for n in sorted(n_values)}
    summary = pd.DataFrame({"n": list(frames), "max_gap": [max_gap(f) for f in frames.values()]})
    return frames, summary


def check_figure(summary: pd.DataFrame, which: Which, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """
    fig3：max_gap 随 n 严格递减。
    fig4：每个 max_gap 都不低于 n 最小时的 fig4_gap_ratio 倍（间距不消失）。
    """
    gaps = summary.sort_values("n")["max_gap"].to_numpy()
    if gaps.size < 2:
        return False
    if which == "fig3":
        return bool(np.all(np.diff(gaps) < 0))
    return bool(np.all(gaps[1:] >= tolerances.fig4_gap_ratio * gaps[0]) and gaps[0] > 0)


__all__ = [
    "FIGURE_COLUMNS",
    "FIGURE_VARIANT",
    "figure_data",
    "max_gap",
    "figure_summary",
    "check_figure",
]
