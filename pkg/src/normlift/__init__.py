"""Exact kernels for norm groups, Hensel-Greenberg lifting over Puiseux
towers, mod-d Milnor K-theory and Hilbert-symbol local-global checks."""
from .fields import GF, QQ, FieldDescriptor
from .poly import NewtonPolygonSlopes, SeriesPoly, eval_poly, newton_polygon
from .series import INF, InfVal, PuiseuxSeries, invert_unit

__all__ = [
    "GF", "QQ", "FieldDescriptor", "INF", "InfVal", "PuiseuxSeries", "invert_unit",
    "SeriesPoly", "eval_poly", "newton_polygon", "NewtonPolygonSlopes",
]
