"""Rational functions of the index ``N`` and ``eps`` (sympy backed)."""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import InputError, SingularRecursionError, UnsupportedShapeError
from .constants import Const
from .series import LaurentSeries

N_SYM = sympy.Symbol("N")
EPS_SYM = sympy.Symbol("eps")


def _to_fraction(value) -> Fraction:
    value = sympy.nsimplify(value)
    if not value.is_Rational:
        raise InputError(f"coefficient {value} is not rational")
    return Fraction(int(value.p), int(value.q))


class RationalFunction:
    """Quotient of polynomials in ``N`` and ``eps`` with rational coefficients."""

    __slots__ = ("expr",)

    def __init__(self, expr):
        if isinstance(expr, RationalFunction):
            expr = expr.expr
        if isinstance(expr, str):
            expr = sympy.parse_expr(expr.replace("^", "**"), local_dict={"N": N_SYM, "eps": EPS_SYM, "n": N_SYM})
        expr = sympy.sympify(expr)
        extra = expr.free_symbols - {N_SYM, EPS_SYM}
        if extra:
            raise InputError(f"unexpected symbols {sorted(map(str, extra))} in coefficient")
        if not expr.is_rational_function(N_SYM, EPS_SYM):
            raise InputError(f"coefficient {expr} is not a rational function of N and eps")
        self.expr = sympy.cancel(sympy.together(expr))

    def __repr__(self):
        return f"RationalFunction({self.expr})"

    def __str__(self):
        return str(self.expr).replace("**", "^")

    def is_zero(self) -> bool:
        return self.expr == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return sympy.simplify(self.expr - other.expr) == 0

    def __hash__(self):
        return hash(sympy.srepr(self.expr))

    def linear_factors(self):
        """Factor into ``content * prod (N + m + n eps)^k``.

        Returns ``(content, [(m, n, k), ...])`` with rational content (no eps)
        and integer ``m``; ``k`` is negative for denominator factors.
        """
        num, den = sympy.fraction(self.expr)
        content = Fraction(1)
        factors = {}
        for part, sign in ((num, 1), (den, -1)):
            c, flist = sympy.factor_list(sympy.expand(part), N_SYM, EPS_SYM)
            content *= _to_fraction(c) ** sign
            for f, k in flist:
                poly = sympy.Poly(f, N_SYM, EPS_SYM)
                if poly.total_degree() == 0:
                    content *= _to_fraction(f) ** (sign * k)
                    continue
                if poly.degree(N_SYM) != 1 or poly.total_degree() != 1:
                    raise UnsupportedShapeError(f"coefficients not linear-factorable: factor {f}")
                lead = _to_fraction(poly.coeff_monomial(N_SYM))
                m = _to_fraction(poly.coeff_monomial(1)) / lead
                n = _to_fraction(poly.coeff_monomial(EPS_SYM)) / lead
                if m.denominator != 1:
                    raise UnsupportedShapeError(f"factor {f} is not of the form N + integer + n*eps")
                content *= lead ** (sign * k)
                key = (int(m), n)
                factors[key] = factors.get(key, 0) + sign * k
        return content, [(m, n, k) for (m, n), k in sorted(factors.items()) if k]

    def at(self, N: int):
        """The function of ``eps`` obtained by fixing the index."""
        return self.expr.subs(N_SYM, N)

    def series_at(self, N: int, order: int) -> LaurentSeries:
        """Laurent series in eps (rational coefficients) at a fixed index value."""
        value = sympy.cancel(self.at(N))
        num, den = sympy.fraction(value)
        pn = [_to_fraction(c) for c in reversed(sympy.Poly(num, EPS_SYM).all_coeffs())]
        pd = [_to_fraction(c) for c in reversed(sympy.Poly(den, EPS_SYM).all_coeffs())]
        if all(c == 0 for c in pn):
            return LaurentSeries({}, order)
        v = next(i for i, c in enumerate(pd) if c)
        pd = pd[v:]
        length = order + v + 1
        quotient = []
        rem = pn + [Fraction(0)] * max(0, length - len(pn))
        for i in range(max(length, 0)):
            q = rem[i] / pd[0]
            quotient.append(q)
            for k, d in enumerate(pd):
                if i + k < len(rem):
                    rem[i + k] -= q * d
        coeffs = {i - v: Const.rational(q) for i, q in enumerate(quotient) if q}
        return LaurentSeries(coeffs, order)


def series_inverse(s: LaurentSeries, order: int) -> LaurentSeries:
    """``1/s`` for a series with rational coefficients, through ``eps^order``."""
    items = [(k, c.rational_value()) for k, c in s.items()]
    if not items:
        raise SingularRecursionError("singular recursion point: coefficient vanishes identically")
    v, lead = items[0]
    known = s.truncation - v
    order = min(order, known - v)
    inv = []
    coeff = {k - v: c for k, c in items}
    for i in range(max(order + v + 1, 0)):
        acc = Fraction(1 if i == 0 else 0)
        for k in range(1, i + 1):
            if k in coeff:
                acc -= coeff[k] * inv[i - k]
        inv.append(acc / lead)
    return LaurentSeries({i - v: Const.rational(c) for i, c in enumerate(inv) if c}, order)


__all__ = ["RationalFunction", "series_inverse", "N_SYM", "EPS_SYM"]
