"""eps-expansion of pFq (p = q+1) and Appell functions around integer parameters.

A parameter ``c + alpha*eps`` with integer part ``c >= 1`` contributes
``(c+alpha eps)_m = Gamma(c+m+alpha eps)/Gamma(c+alpha eps)``; an upper
parameter with ``c = 0`` is written ``alpha eps (1+alpha eps)_(m-1)``, which
makes the explicit factor of eps visible.  The summand then becomes a Laurent
series whose coefficients are expressions in the summation index, and each
order is summed to infinity by :func:`nestsum.telescoper.sum_range`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UnsupportedShapeError
from .gamma import GammaAtom, as_const, gamma_ratio_expand
from .kernel.constants import Const
from .kernel.letters import Letter
from .kernel.series import LaurentSeries
from .ssum import Expression
from .telescoper import sum_range


@dataclass(frozen=True)
class Param:
    """``c + alpha*eps`` with integer ``c``."""

    c: int
    alpha: object = 0

    def __post_init__(self):
        f = Fraction(self.c)
        if f.denominator != 1:
            raise UnsupportedShapeError(f"parameter {f} is not an integer plus eps; half-integer expansion is not supported")
        object.__setattr__(self, "c", int(f))
        object.__setattr__(self, "alpha", as_const(self.alpha))

    @classmethod
    def coerce(cls, value) -> "Param":
        if isinstance(value, Param):
            return value
        if isinstance(value, tuple):
            return cls(*value)
        return cls(value)

    def __str__(self):
        if self.alpha.is_zero():
            return str(self.c)
        return f"{self.c}+({self.alpha})*eps"


def _params(values):
    return tuple(Param.coerce(v) for v in values)


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple
    lower: tuple
    x: object = 1

    def __post_init__(self):
        object.__setattr__(self, "upper", _params(self.upper))
        object.__setattr__(self, "lower", _params(self.lower))
        object.__setattr__(self, "x", Letter.coerce(self.x) if self.x != 0 else 0)
        if len(self.upper) != len(self.lower) + 1:
            raise InputError(f"only p = q+1 is supported, got {len(self.upper)}F{len(self.lower)}")
        for b in self.lower:
            if b.c < 1:
                raise InputError(f"lower parameter {b} has non-positive integer part")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


def _summand_atoms(upper, lower):
    """Gamma atoms in the index, eps power and scale of one pFq summand (m >= 1)."""
    atoms, eps_power, scale = [], 0, Const.rational(1)
    for a in upper:
        if a.c >= 1:
            atoms += [GammaAtom(a.c, 1, a.alpha), GammaAtom(a.c, 0, a.alpha, -1)]
        elif a.c == 0:
            if a.alpha.is_zero():
                return None
            atoms += [GammaAtom(0, 1, a.alpha), GammaAtom(1, 0, a.alpha, -1)]
            eps_power += 1
            scale = scale * a.alpha
        else:
            raise UnsupportedShapeError(f"upper parameter {a} has negative integer part (terminating series)")
    for b in lower:
        atoms += [GammaAtom(b.c, 1, b.alpha, -1), GammaAtom(b.c, 0, b.alpha)]
    return atoms, eps_power, scale


def summand_series(spec: HypergeometricSpec, order: int, var: str = "m") -> LaurentSeries | None:
    """Series of ``prod (a)_m / (prod (b)_m m!)`` in eps; ``None`` if it vanishes for m >= 1."""
    parts = _summand_atoms(spec.upper, spec.lower)
    if parts is None:
        return None
    atoms, eps_power, scale = parts
    atoms.append(GammaAtom(1, 1, 0, -1))
    body = gamma_ratio_expand(atoms, order - eps_power, var)
    return body.scale(Expression.const(scale, var)).shift(eps_power)


def expand_pFq(spec: HypergeometricSpec, order: int) -> LaurentSeries:
    """Laurent series of ``pFq(upper; lower; x)`` in eps through ``eps^order``.

    Coefficients are constant expressions in S-sums at infinity.
    """
    one = Expression.one()
    if spec.x == 0:
        return LaurentSeries.constant(one, order)
    body = summand_series(spec, order)
    out = {0: one}
    if body is not None:
        for k, coeff in body.items():
            inner = coeff.with_var("j").times_factor(spec.x)
            total = sum_range(inner, 1, "inf")
            out[k] = out[k] + total if k in out else total
    return LaurentSeries(out, order)


# ---------------------------------------------------------------------------
# Appell functions


@dataclass(frozen=True)
class AppellSpec:
    """``F1(a; b1, b2; c; x1, x2)`` or ``F2(a; b1, b2; c1, c2; x1, x2)``.

    ``c`` is a single parameter for F1 and a pair ``(c1, c2)`` for F2.
    """

    kind: str
    a: object
    b1: object
    b2: object
    c: tuple
    x1: object = 1
    x2: object = 0

    def __post_init__(self):
        if self.kind not in ("F1", "F2"):
            raise InputError(f"unknown Appell kind {self.kind!r}")
        for name in ("a", "b1", "b2"):
            object.__setattr__(self, name, Param.coerce(getattr(self, name)))
        c = self.c if isinstance(self.c, list) or (isinstance(self.c, tuple) and self.kind == "F2") else [self.c]
        c = tuple(Param.coerce(v) for v in c)
        if len(c) != (1 if self.kind == "F1" else 2):
            raise InputError(f"{self.kind} needs {1 if self.kind == 'F1' else 2} lower parameter(s)")
        for v in c:
            if v.c < 1:
                raise InputError(f"lower parameter {v} has non-positive integer part")
        object.__setattr__(self, "c", c)
        for name in ("x1", "x2"):
            v = getattr(self, name)
            object.__setattr__(self, name, 0 if v == 0 else Letter.coerce(v))


def expand_appell(spec: AppellSpec, order: int) -> LaurentSeries:
    """Laurent series of an Appell function in eps through ``eps^order``."""
    from .appell import expand_double

    if spec.x2 == 0 or spec.x1 == 0:
        first = spec.x2 == 0
        b = spec.b1 if first else spec.b2
        c = spec.c[0] if spec.kind == "F1" or first else spec.c[1]
        x = spec.x1 if first else spec.x2
        return expand_pFq(HypergeometricSpec((spec.a, b), (c,), x), order)
    return expand_double(spec, order)


__all__ = [
    "Param", "HypergeometricSpec", "AppellSpec", "expand_pFq", "expand_appell", "summand_series",
]
