"""Exact arithmetic substrate: letters, constants, partial fractions, series, numerics."""

from .constants import GAMMA_E, Const, EulerGamma, MzvSymbol, Symbol, zeta
from .letters import Letter, as_fraction
from .numeric import const_numeric, eval_numeric
from .partial_fractions import partial_fraction, partial_fraction_two_families
from .series import LaurentSeries, series_exp

__all__ = [
    "GAMMA_E", "Const", "EulerGamma", "MzvSymbol", "Symbol", "zeta", "Letter", "as_fraction",
    "const_numeric", "eval_numeric", "partial_fraction", "partial_fraction_two_families",
    "LaurentSeries", "series_exp",
]
