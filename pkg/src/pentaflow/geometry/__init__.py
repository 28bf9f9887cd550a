"""几何核心：行列式、多边形、系数与五角星映射。"""

from .coefficients import all_coefficients, coefficients, vertex_two_ways
from .models import CoefficientQuad, Point2, Vector2
from .pentagram import iterate_pentagram, pentagram_map
from .persistence import read_polygon_csv, write_polygon_csv
from .polygon import MIN_VERTICES, Polygon, regular_polygon
from .primitives import det2, line_intersection, signed_length

__all__ = [
    "CoefficientQuad",
    "MIN_VERTICES",
    "Point2",
    "Polygon",
    "Vector2",
    "all_coefficients",
    "coefficients",
    "det2",
    "iterate_pentagram",
    "line_intersection",
    "pentagram_map",
    "read_polygon_csv",
    "regular_polygon",
    "signed_length",
    "vertex_two_ways",
]
