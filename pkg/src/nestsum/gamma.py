"""Expansion of Gamma ratios and Pochhammer symbols in eps.

Every factor is expanded through its logarithm,

    log Gamma(K+1+d) = log Gamma(K+1) + log Gamma(1+d) + sum_k (-1)^(k-1) d^k S(K;k)/k,
    log Gamma(1+d)   = -gamma_E d + sum_{k>=2} (-1)^k zeta_k d^k / k,

the logarithms of all factors are added, and the exponential is taken once at
the end.  Contributions of ``log Gamma(1+d)`` from numerator and denominator
therefore cancel exactly when they should.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InputError, UnsupportedShapeError
from .kernel.constants import GAMMA_E, Const, EulerGamma, Symbol, zeta
from .kernel.letters import ONE as _ONE_LETTER
from .kernel.letters import as_fraction
from .kernel.series import LaurentSeries, series_exp
from .ssum import Expression, SSum, ssum_value, synchronize


def as_const(value) -> Const:
    """Rational, symbol name or :class:`Const` as a constant."""
    if isinstance(value, Const):
        return value
    if isinstance(value, str):
        try:
            return Const.rational(as_fraction(value))
        except (ValueError, ZeroDivisionError):
            return Const.atom(Symbol(value))
    return Const.rational(as_fraction(value))


def _integer(value, what):
    f = as_fraction(value)
    if f.denominator != 1:
        raise UnsupportedShapeError(f"{what} {f} is not an integer; half-integer arguments are not supported")
    return int(f)


@dataclass(frozen=True)
class GammaAtom:
    """``Gamma(c0 + c1*N + c2*eps) ** exponent``."""

    c0: int
    c1: int = 0
    c2: object = 0
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c0", _integer(self.c0, "Gamma argument"))
        if self.c1 not in (0, 1):
            raise InputError("coefficient of the index in a Gamma argument must be 0 or 1")
        object.__setattr__(self, "c2", as_const(self.c2))
        object.__setattr__(self, "exponent", int(self.exponent))

    def inverse(self) -> "GammaAtom":
        return GammaAtom(self.c0, self.c1, self.c2, -self.exponent)

    def __str__(self):
        parts = ["N"] if self.c1 else []
        if self.c0 or not (self.c1 or not self.c2.is_zero()):
            parts.append(str(self.c0))
        if not self.c2.is_zero():
            parts.append("eps" if self.c2 == 1 else f"({self.c2})*eps")
        arg = "+".join(parts).replace("+-", "-")
        return f"Gamma({arg})" + (f"^{self.exponent}" if self.exponent != 1 else "")


@dataclass(frozen=True)
class Pochhammer:
    """Rising factorial ``(c + a*eps)^(overline m)``; ``length`` is an integer or an index name."""

    a: object = 1
    length: object = "m"
    c: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_const(self.a))
        object.__setattr__(self, "c", _integer(self.c, "Pochhammer base"))
        if not isinstance(self.length, str):
            m = _integer(self.length, "Pochhammer length")
            if m < 0:
                raise InputError("Pochhammer length must be nonnegative")
            object.__setattr__(self, "length", m)

    def atoms(self) -> list:
        """``Gamma(c + m + a eps) / Gamma(c + a eps)``."""
        if isinstance(self.length, str):
            top = GammaAtom(self.c, 1, self.a)
        else:
            top = GammaAtom(self.c + self.length, 0, self.a)
        return [top, GammaAtom(self.c, 0, self.a, -1)]


def _log_gamma_one(delta: Const, order: int, var: str) -> dict:
    """Coefficients of ``log Gamma(1 + delta*eps)`` up to ``eps^order``."""
    out = {}
    if order >= 1:
        out[1] = Expression.const(-(GAMMA_E * delta), var)
    for k in range(2, order + 1):
        c = Const.atom(zeta(k), 1, Fraction((-1) ** k, k)) * delta ** k
        out[k] = Expression.const(c, var)
    return out


def _harmonic_log(delta: Const, bound, order: int, var: str) -> dict:
    """``sum_k (-1)^(k-1) (delta eps)^k S(bound;k)/k`` with ``bound`` an int or an offset of ``var``."""
    out = {}
    for k in range(1, order + 1):
        coeff = delta ** k * Fraction((-1) ** (k - 1), k)
        if isinstance(bound, tuple):
            s = synchronize(SSum(bound[0], (k,), (1,)), 0, var)
        else:
            s = Expression.const(ssum_value((k,), (_ONE_LETTER,), bound), var)
        out[k] = s.scale(coeff)
    return out


def _shifted_log(delta: Const, i: int, order: int, var: str) -> dict:
    """``log(1 + delta*eps/i)`` for a nonzero integer ``i``."""
    return {k: Expression.const(delta ** k * Fraction((-1) ** (k - 1), k) / Fraction(i) ** k, var)
            for k in range(1, order + 1)}


def _add_into(acc: dict, part: dict, scale: int):
    for k, v in part.items():
        v = v.scale(scale)
        acc[k] = acc[k] + v if k in acc else v


def _analyse(atom: GammaAtom, var: str, extract_poles: bool):
    """Prefactor expression, eps shift and log-series builder for one atom."""
    e = atom.exponent
    delta = atom.c2
    if atom.c1:
        c0 = atom.c0
        poles = {i: -e for i in range(1, c0)} if c0 >= 1 else {i: e for i in range(c0, 1)}
        pref = Expression.monomial(1, poles=poles, fact=e, var=var)

        def logs(order):
            acc = {}
            if not delta.is_zero():
                _add_into(acc, _harmonic_log(delta, (c0 - 1,), order, var), e)
                _add_into(acc, _log_gamma_one(delta, order, var), e)
            return acc
        return pref, 0, logs
    c0 = atom.c0
    if c0 >= 1:
        pref = Expression.const(Fraction(factorial(c0 - 1)) ** e, var)

        def logs(order):
            acc = {}
            if not delta.is_zero():
                _add_into(acc, _harmonic_log(delta, c0 - 1, order, var), e)
                _add_into(acc, _log_gamma_one(delta, order, var), e)
            return acc
        return pref, 0, logs
    if delta.is_zero() or not extract_poles:
        raise InputError(f"unextracted pole: {atom} is singular at eps = 0")
    # Gamma(c0 + d) = Gamma(1 + d) / (d * prod_{i=c0}^{-1} (i + d))
    scale = Fraction(1)
    for i in range(c0, 0):
        scale /= i
    if len(delta.terms) != 1:
        raise UnsupportedShapeError(f"cannot extract the pole of {atom}: eps coefficient is not a monomial")
    pref = Expression.const((delta ** -1 * scale) ** e, var)

    def logs(order):
        acc = {}
        _add_into(acc, _log_gamma_one(delta, order, var), e)
        for i in range(c0, 0):
            _add_into(acc, _shifted_log(delta, i, order, var), -e)
        return acc
    return pref, -e, logs


def gamma_ratio_expand(atoms, order: int, var: str = "N", extract_poles: bool = False) -> LaurentSeries:
    """Laurent expansion of ``prod Gamma(...)^e`` in eps up to ``eps^order``.

    Coefficients are expressions in ``var`` built from ``S(var;k;1)``, the
    factorial atom ``Gamma(var+1)``, ``gamma_E`` and zeta values.  Constant
    atoms with a non-positive integer argument are poles; they raise unless
    ``extract_poles`` is set, in which case the ``1/eps`` factors are split
    off explicitly.
    """
    atoms = list(atoms)
    pref = Expression.one(var)
    shift = 0
    builders = []
    for atom in atoms:
        p, s, logs = _analyse(atom, var, extract_poles)
        pref = pref * p
        shift += s
        builders.append(logs)
    need = order - shift
    if need < 0:
        return LaurentSeries({}, order)
    acc: dict = {}
    for logs in builders:
        _add_into(acc, logs(need), 1)
    body = series_exp(LaurentSeries(acc, need), Expression.one(var))
    return body.scale(pref).shift(shift)


def pochhammer_expand(p: Pochhammer, order: int, var: str | None = None) -> LaurentSeries:
    """Expansion of ``(c + a eps)^(overline m)``; the factorial stays symbolic for an index length."""
    if p.c < 1:
        raise InputError(f"unnormalized base {p.c} + ({p.a})*eps: integer part must be positive")
    if var is None:
        var = p.length if isinstance(p.length, str) else "m"
    elif isinstance(p.length, str) and var != p.length:
        p = Pochhammer(p.a, var, p.c)
    return gamma_ratio_expand(p.atoms(), order, var)


def product_to_gamma(m, n=0, slope: int = 1) -> list:
    """``prod_{j=1}^N (slope*j + m + n eps)`` as Gamma atoms ``Gamma(N+1+m+n eps)/Gamma(1+m+n eps)``."""
    if slope != 1:
        raise UnsupportedShapeError(f"not reducible to Gamma ratio: slope {slope} in the running index")
    m = _integer(m, "product offset")
    return [GammaAtom(1 + m, 1, n), GammaAtom(1 + m, 0, n, -1)]


def gamma_atoms_value(atoms, N: int, eps):
    """Direct numeric value of a Gamma product (mpmath), for checks."""
    import mpmath

    total = mpmath.mpf(1)
    for a in atoms:
        if not a.c2.is_rational():
            raise InputError("numeric Gamma evaluation needs rational eps coefficients")
        c2 = a.c2.rational_value()
        arg = a.c0 + a.c1 * N + mpmath.mpf(c2.numerator) / c2.denominator * eps
        total *= mpmath.gamma(arg) ** a.exponent
    return total


def contains_gamma_e(obj) -> bool:
    """True when Euler's constant occurs in an expression, constant or series."""
    if isinstance(obj, LaurentSeries):
        return any(contains_gamma_e(c) for _, c in obj.items())
    if isinstance(obj, Expression):
        return any(contains_gamma_e(c) for c in obj.terms.values())
    if isinstance(obj, Const):
        return any(isinstance(a, EulerGamma) for a in obj.atoms())
    return False


def assert_gamma_free(obj) -> None:
    """Raise ``AssertionError`` if Euler's constant survived a normalization."""
    if contains_gamma_e(obj):
        raise AssertionError("gamma_E did not cancel")


__all__ = [
    "GammaAtom", "Pochhammer", "gamma_ratio_expand", "pochhammer_expand", "product_to_gamma",
    "gamma_atoms_value", "contains_gamma_e", "assert_gamma_free", "as_const",
]
