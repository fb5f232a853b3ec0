"""Nested S-sums, their algebra, reduction algorithms and epsilon expansions."""

__version__ = "0.1.0"

from .errors import (
    DivergenceError, InputError, NestsumError, ParseError, SingularRecursionError, UnsupportedShapeError,
)
from .kernel import Const, LaurentSeries, Letter, MzvSymbol, const_numeric, eval_numeric
from .ssum import Expression, Index, SSum, Term, S, canonicalize, evaluate_exact, stuffle_product, synchronize
from .telescoper import (
    ReductionTask, binomial_convolve, conjugate, convolve, reduce, reduce_insertion, sum_range,
)
from .gamma import GammaAtom, Pochhammer, gamma_ratio_expand, pochhammer_expand, product_to_gamma
from .special import AppellSpec, HypergeometricSpec, Param, expand_appell, expand_pFq
from .zeta import constant_stuffle, expression_limit, limit_to_infinity, mzv_numeric, strict_mzv
from .diffeq import DifferenceEquation, iterate_numeric, solve_first_order
from .parser import parse, parse_expression, parse_series
from .printer import format_expression, format_series

__all__ = [
    "__version__",
    "NestsumError", "InputError", "ParseError", "UnsupportedShapeError", "DivergenceError",
    "SingularRecursionError",
    "Const", "LaurentSeries", "Letter", "MzvSymbol", "const_numeric", "eval_numeric",
    "Expression", "Index", "SSum", "Term", "S", "canonicalize", "evaluate_exact", "stuffle_product",
    "synchronize",
    "ReductionTask", "binomial_convolve", "conjugate", "convolve", "reduce", "reduce_insertion",
    "sum_range",
    "GammaAtom", "Pochhammer", "gamma_ratio_expand", "pochhammer_expand", "product_to_gamma",
    "AppellSpec", "HypergeometricSpec", "Param", "expand_appell", "expand_pFq",
    "constant_stuffle", "expression_limit", "limit_to_infinity", "mzv_numeric", "strict_mzv",
    "DifferenceEquation", "iterate_numeric", "solve_first_order",
    "parse", "parse_expression", "parse_series", "format_expression", "format_series",
]
