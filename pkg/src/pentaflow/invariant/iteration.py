"""迭代 T 并测量直径衰减与不变量漂移。"""

from __future__ import annotations

import numpy as np
from loguru import logger

from ..errors import DegenerateImage, FitError
from ..fitting import fit_line
from ..geometry import Polygon, iterate_pentagram
from .invariant import coefficient_product
from .models import IterationTrace


def iterate_and_measure(V: Polygon, steps: int) -> IterationTrace:
    """
    连续应用 T 共 steps 次，记录直径与 |f(V_k)/f(V_0) - 1|。

    中途出现 DegenerateImage 时截断轨迹并记下失败的迭代序号。
    """
    if steps < 2:
        raise ValueError(f"steps 至少为 2，实际 {steps}")
    f0 = coefficient_product(V)
    trace = IterationTrace(requested_steps=steps, diameters=[V.diameter], invariant_drift=[0.0])
    try:
        for image in iterate_pentagram(V, steps):
            trace.diameters.append(image.diameter)
            trace.invariant_drift.append(abs(coefficient_product(image) / f0 - 1.0))
    except DegenerateImage as exc:
        trace.truncated_at = exc.iteration
        trace.error = str(exc)
        logger.warning(f"迭代在第 {exc.iteration} 步退化，已完成 {trace.completed_steps} 步: {exc}")

    if trace.completed_steps >= 1:
        try:
            fit = fit_line(np.arange(len(trace.diameters)), np.log(trace.diameters))
        except FitError as exc:
            logger.warning(f"直径衰减拟合失败: {exc}")
        else:
            trace.log_diameter_slope = fit.slope
            trace.r_squared = fit.r_squared
    return trace


__all__ = ["iterate_and_measure"]
