"""
渐近展开系数表。

  B_i  = 1/4 + b_w * W / n + O(1/n²)
  C_i  = 1/4 + c_w * W / n + O(1/n²)
  n²(T²(v_{i-1}) - v_i) -> ev_dd γ'' + ev_w W γ'
  n²(p_i - v_i)         -> p_dd γ'' + p_w W γ'
  T²(v_{i-1}) - p_i     = ((ev_dd - p_dd) γ'' + (ev_w - p_w) W γ') / n² + 高阶项

STATED 是文献给出的系数；REDERIVED 由系数定义直接 Taylor 展开得到
（在 γ(x) = (x, x² + x³)、x = 0 处手算核对：C_0 = (1/4)(1+3h)/(1+3h/2)）。
SCHWARTZ 把演化方程右端换成 p_i 的展开，用来复现两条曲线保持距离的现象。
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True)
class ExpansionTable:
    name: str
    b_w: float
    c_w: float
    ev_dd: float
    ev_w: float
    p_dd: float = 1.0
    p_w: float = -2.0 / 3.0

    @property
    def cor_dd(self) -> float:
        return self.ev_dd - self.p_dd

    @property
    def cor_w(self) -> float:
        return self.ev_w - self.p_w

    def predicted_b(self, W: float, n: int) -> float:
        return 0.25 + self.b_w * W / n

    def predicted_c(self, W: float, n: int) -> float:
        return 0.25 + self.c_w * W / n

    def evolution_rhs(self, g1: np.ndarray, g2: np.ndarray, W: float) -> np.ndarray:
        return self.ev_dd * np.asarray(g2) + self.ev_w * W * np.asarray(g1)

    def p_point_rhs(self, g1: np.ndarray, g2: np.ndarray, W: float) -> np.ndarray:
        return self.p_dd * np.asarray(g2) + self.p_w * W * np.asarray(g1)

    def corollary_rhs(self, g1: np.ndarray, g2: np.ndarray, W: float, n: int) -> np.ndarray:
        """T²(v_{i-1}) - p_i 的主项（已除以 n²）。"""
        return (self.cor_dd * np.asarray(g2) + self.cor_w * W * np.asarray(g1)) / n**2

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


STATED = ExpansionTable(name="stated", b_w=-1.0 / 8.0, c_w=-1.0 / 16.0, ev_dd=0.75, ev_w=-1.0 / 8.0)
REDERIVED = ExpansionTable(name="rederived", b_w=-1.0 / 8.0, c_w=1.0 / 8.0, ev_dd=0.75, ev_w=-0.5)
SCHWARTZ = ExpansionTable(name="schwartz", b_w=-1.0 / 8.0, c_w=-1.0 / 16.0, ev_dd=1.0, ev_w=-2.0 / 3.0)

EXPANSIONS: dict[str, ExpansionTable] = {t.name: t for t in (STATED, REDERIVED, SCHWARTZ)}


def get_expansion(name: str | ExpansionTable) -> ExpansionTable:
    if isinstance(name, ExpansionTable):
        return name
    try:
        return EXPANSIONS[name]
    except KeyError:
        raise ValueError(f"未知展开表 {name!r}；可用: {', '.join(EXPANSIONS)}") from None


__all__ = ["ExpansionTable", "STATED", "REDERIVED", "SCHWARTZ", "EXPANSIONS", "get_expansion"]
