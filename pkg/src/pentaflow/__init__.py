"""pentaflow：五角星映射、不变量与极限流渐近展开的数值实验室。"""

__version__ = "0.1.0"

__all__ = ["__version__"]
