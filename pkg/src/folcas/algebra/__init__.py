"""Exact rational arithmetic: multivariate polynomials, rational functions,
and univariate elimination primitives."""

from fractions import Fraction

from .poly import (
    MultiPoly,
    variables,
    unify_contexts,
    div_exact,
    poly_gcd,
    poly_gcd_list,
    poly_lcm,
    resultant,
    subresultant_prs,
    subresultant_first,
)
from .ratfunc import RatFunc
from .roots import rational_roots, is_rational_square
from . import univar

__all__ = [
    "Fraction",
    "MultiPoly",
    "RatFunc",
    "variables",
    "unify_contexts",
    "div_exact",
    "poly_gcd",
    "poly_gcd_list",
    "poly_lcm",
    "resultant",
    "subresultant_prs",
    "subresultant_first",
    "rational_roots",
    "is_rational_square",
    "univar",
]
