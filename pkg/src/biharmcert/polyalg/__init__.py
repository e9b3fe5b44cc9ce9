"""Sparse multivariate polynomials, rational functions and elimination tools."""

from .parse import PolynomialSyntaxError, format_polynomial, parse_polynomial
from .poly import (
    MultiPoly,
    NotDivisible,
    UnknownVariable,
    VarTable,
    VarTableMismatch,
    differentiate,
    poly_arith,
)
from .ratfunc import RatFunc, clear_denominators, substitute
from .rewrite import RewriteRule, RewriteSystem, monomial_of, reduce_by_rewrite
from .univariate import (
    SturmChain,
    bareiss_det,
    coeff_list,
    parse_extended,
    prem,
    pseudo_divmod,
    resultant,
    resultant_sylvester,
    sturm_chain,
    sturm_count,
    sylvester_matrix,
    univariate_gcd,
)

__all__ = [
    "MultiPoly",
    "NotDivisible",
    "PolynomialSyntaxError",
    "RatFunc",
    "RewriteRule",
    "RewriteSystem",
    "SturmChain",
    "UnknownVariable",
    "VarTable",
    "VarTableMismatch",
    "bareiss_det",
    "clear_denominators",
    "coeff_list",
    "differentiate",
    "format_polynomial",
    "monomial_of",
    "parse_extended",
    "parse_polynomial",
    "poly_arith",
    "prem",
    "pseudo_divmod",
    "reduce_by_rewrite",
    "resultant",
    "resultant_sylvester",
    "sturm_chain",
    "sturm_count",
    "substitute",
    "sylvester_matrix",
    "univariate_gcd",
]
