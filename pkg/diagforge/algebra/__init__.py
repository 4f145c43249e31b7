"""Exact scalars, multivariate polynomials and rational functions."""

from diagforge.algebra.field import RATIONALS, FieldElem, NumberField, field_arith, format_rational, parse_rational
from diagforge.algebra.mpoly import MPoly, poly_divide_exact, poly_eval
from diagforge.algebra.norm import norm_form
from diagforge.algebra.rational_function import RationalFunction, poly_substitute

__all__ = [
    "RATIONALS",
    "FieldElem",
    "MPoly",
    "NumberField",
    "RationalFunction",
    "field_arith",
    "format_rational",
    "norm_form",
    "parse_rational",
    "poly_divide_exact",
    "poly_eval",
    "poly_substitute",
]
