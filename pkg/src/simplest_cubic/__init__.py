"""Principal ideals of bounded norm in the simplest cubic fields."""

from .cones import ConeId, SimplicialCone, classify, fundamental_domain, membership, reduce_to_domain, tp_unit
from .counting import CountReport, count_primitive, count_principal, min_primitive_norm, oracle_count
from .field import Element, FieldParams, make_params, mul, norm

__version__ = "0.1.0"

__all__ = [
    "ConeId",
    "CountReport",
    "Element",
    "FieldParams",
    "SimplicialCone",
    "classify",
    "count_primitive",
    "count_principal",
    "fundamental_domain",
    "make_params",
    "membership",
    "min_primitive_norm",
    "mul",
    "norm",
    "oracle_count",
    "reduce_to_domain",
    "tp_unit",
]
