"""不变量实验：f(V)、精确恒等式、随机语料与迭代衰减。"""

from .corpus import convex_corpus, random_convex_polygon
from .identities import (
    mapped_coefficient_formula,
    mapped_coefficient_identity,
    ratio_transport_check,
    ratio_transport_sweep,
)
from .invariant import check_invariance, coefficient_factors, coefficient_product, invariant_f
from .iteration import iterate_and_measure
from .models import InvariantReport, IterationTrace

__all__ = [
    "InvariantReport",
    "IterationTrace",
    "check_invariance",
    "coefficient_factors",
    "coefficient_product",
    "convex_corpus",
    "invariant_f",
    "iterate_and_measure",
    "mapped_coefficient_formula",
    "mapped_coefficient_identity",
    "random_convex_polygon",
    "ratio_transport_check",
    "ratio_transport_sweep",
]
