"""Difference equations in the Mellin variable N.

Equations are written

    a0(N) I(N) - a1(N) I(N-1) - ... - am(N) I(N-m) = G(N),

which for ``m = 1`` is the usual single-step form.  Single-step equations are
solved in closed form,

    I(N) = H(N) [ I(0) + sum_{i=1}^N G(i) / (a0(i) H(i)) ],   H(N) = prod_{j=1}^N a1(j)/a0(j),

with ``H`` turned into Gamma functions and the sum reduced to S-sums order by
order in eps.  :func:`iterate_numeric` runs the recursion for fixed N and
serves as the oracle for any order m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import InputError, SingularRecursionError, UnsupportedShapeError
from .gamma import GammaAtom, gamma_ratio_expand, product_to_gamma
from .kernel.constants import Const
from .kernel.letters import Letter
from .kernel.rational import RationalFunction, series_inverse
from .kernel.series import LaurentSeries
from .ssum import Expression, Index, evaluate_exact
from .telescoper import sum_range


def _as_series(value, order: int, var: str) -> LaurentSeries:
    if isinstance(value, LaurentSeries):
        return value
    if isinstance(value, dict):
        return LaurentSeries({k: _as_expr(v, var) for k, v in value.items()}, order)
    return LaurentSeries.constant(_as_expr(value, var), order)


def _as_expr(value, var):
    if isinstance(value, Expression):
        return value.with_var(var)
    return Expression.const(value if isinstance(value, Const) else Const.rational(Fraction(value)), var)


@dataclass
class DifferenceEquation:
    """``sum_i (-1)^[i>0] a_i(N) I(N-i) = G(N)`` with boundary values ``I(0..m-1)``.

    ``coefficients`` holds ``a0..am`` (rational functions of N and eps, as
    sympy expressions or strings); ``inhomogeneity`` is an Expression in N, a
    dict ``{eps_power: Expression}`` or a LaurentSeries; ``boundary`` holds
    rationals or series.
    """

    coefficients: list
    inhomogeneity: object = 0
    boundary: list = field(default_factory=list)
    var: str = "N"

    def __post_init__(self):
        self.coefficients = [RationalFunction(a) for a in self.coefficients]
        if len(self.coefficients) < 2:
            raise InputError("a difference equation needs a0 and at least a1")
        if self.coefficients[0].is_zero():
            raise InputError("a0 must not vanish identically")
        if len(self.boundary) != self.order:
            raise InputError(f"the solution needs {self.order} boundary value(s), got {len(self.boundary)}")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def g_series(self, order: int) -> LaurentSeries:
        return _as_series(self.inhomogeneity, order, self.var)

    def boundary_series(self, order: int) -> list:
        return [_as_series(b, order, self.var) for b in self.boundary]


@dataclass
class Solution:
    closed_form: LaurentSeries
    equation: DifferenceEquation

    def at(self, N: int) -> dict:
        """Exact per-order values at a fixed index."""
        values = {k: evaluate_exact(c, N) for k, c in self.closed_form.items()}
        return {k: v for k, v in values.items() if not v.is_zero()}


def _const_series(s: LaurentSeries, N: int) -> LaurentSeries:
    return LaurentSeries({k: evaluate_exact(c, N) for k, c in s.items()}, s.truncation)


def iterate_numeric(eq: DifferenceEquation, n_max: int, order: int = 0) -> list:
    """Values ``I(0..n_max)`` as series with exact rational coefficients."""
    width = order + 4
    g = eq.g_series(width)
    table = [_const_series(b, 0) for b in eq.boundary_series(width)]
    for N in range(eq.order, n_max + 1):
        a0 = eq.coefficients[0].series_at(N, width)
        if a0.is_zero():
            raise SingularRecursionError(f"singular recursion point: a0 vanishes at N = {N}")
        rhs = _const_series(g, N)
        for i, a in enumerate(eq.coefficients[1:], start=1):
            rhs = rhs + a.series_at(N, width) * table[N - i]
        table.append(series_inverse(a0, width) * rhs)
    return [t.truncate(order) for t in table[: n_max + 1]]


def _inverse_linear(m: int, n: Fraction, k: int, order: int, var: str) -> LaurentSeries:
    """``(var + m + n eps)^(-k)`` expanded in eps (k may be negative)."""
    coeffs = {}
    for l in range(order + 1):
        if k > 0:
            c = Fraction((-1) ** l * comb(k + l - 1, l))
        else:
            if l > -k:
                break
            c = Fraction(comb(-k, l))
        c *= n ** l
        if c:
            coeffs[l] = Expression.monomial(c, poles={m: k + l}, var=var)
    return LaurentSeries(coeffs, order)


def solve_first_order(eq: DifferenceEquation, order: int) -> Solution:
    """Closed form of a single-step equation through ``eps^order``."""
    if eq.order != 1:
        raise UnsupportedShapeError("closed-form solving is implemented for single-step equations only")
    var = eq.var
    if eq.coefficients[1].is_zero():
        raise UnsupportedShapeError("a1 vanishes; the equation is not a recursion")
    c0, f0 = eq.coefficients[0].linear_factors()
    c1, f1 = eq.coefficients[1].linear_factors()
    for m, n, k in f0:
        if k > 0 and m <= -1:
            raise SingularRecursionError(f"singular recursion point: a0 vanishes at N = {-m} for eps = 0")
    for m, n, k in f1:
        if k > 0 and m <= -1:
            raise UnsupportedShapeError(f"a1 vanishes at N = {-m}; the homogeneous solution is not a Gamma ratio")
    for m, n, k in f0 + f1:
        if k < 0 and m <= -1:
            raise SingularRecursionError(f"singular recursion point: pole of the coefficients at N = {-m}")

    # H(N) = (c1/c0)^N prod Gamma(N+1+m+n eps)^e / Gamma(1+m+n eps)^e
    atoms = []
    for factors, sign in ((f1, 1), (f0, -1)):
        for m, n, k in factors:
            for a in product_to_gamma(m, n):
                atoms.append(GammaAtom(a.c0, a.c1, a.c2, a.exponent * k * sign))
    ratio = Letter(c1 / c0)
    h = gamma_ratio_expand(atoms, order, var).map(lambda e: e.times_factor(ratio))
    h_inv = gamma_ratio_expand([a.inverse() for a in atoms], order, var).map(
        lambda e: e.times_factor(ratio.inverse()))

    inv_a0 = LaurentSeries.constant(Expression.const(1 / c0, var), order)
    for m, n, k in f0:
        inv_a0 = inv_a0 * _inverse_linear(m, n, k, order, var)

    g = eq.g_series(order)
    inner = eq.boundary_series(order)[0]
    if not g.is_zero():
        summand = g * inv_a0 * h_inv
        summed = {}
        for k, coeff in summand.items():
            if any(t.fact for t in coeff.terms):
                raise UnsupportedShapeError("inhomogeneous sum contains factorials of the index; not expressible in S-sums")
            summed[k] = sum_range(coeff.with_var("j"), 1, Index(var), var)
        inner = inner + LaurentSeries(summed, summand.truncation)
    return Solution(h * inner, eq)


__all__ = ["DifferenceEquation", "Solution", "iterate_numeric", "solve_first_order"]
