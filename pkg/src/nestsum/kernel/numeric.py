"""Universal evaluator: exact where possible, certified high precision otherwise."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..errors import UnboundSymbolError
from .constants import Const, EulerGamma, MzvSymbol, Symbol
from .letters import as_fraction
from .series import LaurentSeries


def const_numeric(c: Const, digits: int = 30, bindings=None):
    """Evaluate a constant; returns a Fraction when no transcendental atom remains."""
    from ..zeta import mzv_numeric

    c = c.substitute(bindings or {})
    if c.is_rational():
        return c.rational_value()
    with mpmath.workdps(digits + 10):
        total = mpmath.mpf(0)
        for mono, coeff in c.terms.items():
            val = mpmath.mpf(coeff.numerator) / coeff.denominator
            for atom, power in mono:
                if isinstance(atom, EulerGamma):
                    v = +mpmath.euler
                elif isinstance(atom, MzvSymbol):
                    v = mzv_numeric(atom, digits + 5)
                elif isinstance(atom, Symbol):
                    raise UnboundSymbolError(f"unbound symbol {atom.name}")
                else:
                    raise TypeError(atom)
                val *= v ** power
            total += val
        return +total


def eval_numeric(obj, bindings=None, precision: int = 30):
    """Evaluate an expression, constant or Laurent series.

    ``bindings`` maps the running symbol and free letters to integers or
    rationals.  For a series, ``eps`` may be bound to a rational (the stored
    orders are summed) or omitted, in which case a dict of per-order values is
    returned.  Finite sums are evaluated exactly; sums at infinity to
    ``precision`` digits.
    """
    from ..ssum import Expression, evaluate_exact

    bindings = dict(bindings or {})
    if isinstance(obj, LaurentSeries):
        eps = bindings.pop("eps", None)
        values = {k: eval_numeric(c, bindings, precision) for k, c in obj.items()}
        if eps is None:
            return values
        eps = as_fraction(eps)
        if all(isinstance(v, Fraction) for v in values.values()):
            return sum((v * eps ** k for k, v in values.items()), Fraction(0))
        with mpmath.workdps(precision + 10):
            e = mpmath.mpf(eps.numerator) / eps.denominator
            return +sum((v * e ** k for k, v in values.items()), mpmath.mpf(0))
    if isinstance(obj, Const):
        return const_numeric(obj, precision, bindings)
    if isinstance(obj, Expression):
        n = bindings.pop(obj.var, None)
        letters = {k: as_fraction(v) for k, v in bindings.items()}
        return const_numeric(evaluate_exact(obj, n, letters), precision)
    if isinstance(obj, (int, Fraction)):
        return Fraction(obj)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")
