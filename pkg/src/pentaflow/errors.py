"""统一异常层级：几何退化、曲线退化、拟合输入与配置错误。"""

from __future__ import annotations


class PentaflowError(RuntimeError):
    """所有 pentaflow 异常的基类。"""


class GeometryError(PentaflowError):
    """多边形几何相关错误。"""


class InvalidPolygon(GeometryError, ValueError):
    """顶点数不足、坐标非有限值等构造期错误（输入错误）。"""


class DegeneratePosition(GeometryError):
    """一般位置被破坏：系数分母行列式或三点共线判定为零。"""

    def __init__(self, message: str, *, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class DegenerateImage(GeometryError):
    """T(V) 不再满足一般位置；迭代中抛出时带上失败的迭代序号。"""

    def __init__(self, message: str, *, iteration: int | None = None) -> None:
        super().__init__(message)
        self.iteration = iteration


class ParallelLines(GeometryError):
    """两条直线（近似）平行，无唯一交点。"""


class NotCollinear(GeometryError):
    """带符号长度要求的点不在给定直线上。"""


class CurveError(PentaflowError):
    """参数曲线相关错误。"""


class VanishingCurvature(CurveError):
    """det(γ', γ'') 近似为零，W 无定义。"""


class FitError(PentaflowError):
    """收敛阶拟合的输入错误。"""


class InsufficientData(FitError, ValueError):
    """拟合点少于 3 个或 n 不互异。"""


class NonPositiveResidual(FitError, ValueError):
    """对数拟合要求残差严格为正。"""


class ConfigError(PentaflowError, ValueError):
    """配置 / 输入文件解析失败。"""


__all__ = [
    "PentaflowError",
    "GeometryError",
    "InvalidPolygon",
    "DegeneratePosition",
    "DegenerateImage",
    "ParallelLines",
    "NotCollinear",
    "CurveError",
    "VanishingCurvature",
    "FitError",
    "InsufficientData",
    "NonPositiveResidual",
    "ConfigError",
]
