"""Truncated Laurent series in eps with exact coefficients.

Coefficients may be any ring elements supporting ``+``, ``*``, ``-`` and
``is_zero()`` (in practice :class:`~nestsum.ssum.Expression`).  The
truncation order is the highest power known exactly; arithmetic propagates it
pessimistically and never reports coefficients beyond it.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class LaurentSeries:
    __slots__ = ("min_order", "coeffs", "truncation")

    def __init__(self, coeffs: dict | None = None, truncation: int = 0):
        self.truncation = int(truncation)
        items = {k: v for k, v in (coeffs or {}).items() if k <= self.truncation and not v.is_zero()}
        if items:
            self.min_order = min(items)
            top = max(items)
            self.coeffs = [items.get(k) for k in range(self.min_order, top + 1)]
        else:
            self.min_order = self.truncation + 1
            self.coeffs = []

    @classmethod
    def constant(cls, value, truncation: int) -> "LaurentSeries":
        return cls({0: value}, truncation)

    @property
    def valuation(self) -> int:
        return self.min_order

    @property
    def max_order(self) -> int:
        return self.min_order + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if k > self.truncation:
            raise IndexError(f"order {k} beyond truncation {self.truncation}")
        i = k - self.min_order
        if 0 <= i < len(self.coeffs) and self.coeffs[i] is not None:
            return self.coeffs[i]
        return None

    def coefficient(self, k: int, zero):
        c = self[k]
        return zero if c is None else c

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c is not None:
                yield self.min_order + i, c

    def as_dict(self) -> dict:
        return dict(self.items())

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.as_dict() == other.as_dict()

    def truncate(self, order: int) -> "LaurentSeries":
        return LaurentSeries(self.as_dict(), min(order, self.truncation))

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        trunc = min(self.truncation, other.truncation)
        out = self.as_dict()
        for k, v in other.items():
            out[k] = out[k] + v if k in out else v
        return LaurentSeries(out, trunc)

    def __neg__(self):
        return LaurentSeries({k: -v for k, v in self.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "LaurentSeries":
        return LaurentSeries({k: v * factor for k, v in self.items()}, self.truncation)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``eps**k``."""
        return LaurentSeries({i + k: v for i, v in self.items()}, self.truncation + k)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        trunc = min(self.truncation + other.valuation, other.truncation + self.valuation)
        out: dict = {}
        for i, a in self.items():
            for k, b in other.items():
                if i + k > trunc:
                    continue
                p = a * b
                out[i + k] = out[i + k] + p if i + k in out else p
        return LaurentSeries(out, trunc)

    def map(self, fn) -> "LaurentSeries":
        return LaurentSeries({k: fn(v) for k, v in self.items()}, self.truncation)

    def evaluate(self, eps, value_of):
        """Sum ``value_of(c_k) * eps**k`` over the stored orders."""
        return sum((value_of(c) * eps ** k for k, c in self.items()), 0)

    def __repr__(self):
        from ..printer import format_series
        return f"LaurentSeries({format_series(self)})"


def series_exp(series: LaurentSeries, one) -> LaurentSeries:
    """``exp(series)`` for a series with positive valuation; ``one`` is the unit coefficient."""
    if series.is_zero():
        return LaurentSeries.constant(one, series.truncation)
    if series.valuation < 1:
        raise ValueError("exp needs a series without constant or pole terms")
    trunc = series.truncation
    result = LaurentSeries.constant(one, trunc)
    power = LaurentSeries.constant(one, trunc)
    k = 1
    while k * series.valuation <= trunc:
        power = power * series
        result = result + power.scale(Fraction(1, factorial(k)))
        k += 1
    return result
