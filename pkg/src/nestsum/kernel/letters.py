"""Letters of nested sums: nonzero rationals times monomials in free symbols."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError, UnsupportedShapeError


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Letter:
    """A nonzero monomial ``coeff * x**p * y**q ...``.

    Letters appear as the x_i of an S-sum and as the base of powers ``x**n``.
    They form a multiplicative group; addition is only defined when the
    result is again a monomial.
    """

    __slots__ = ("coeff", "syms", "_hash")

    def __init__(self, coeff=1, syms=()):
        coeff = as_fraction(coeff)
        if coeff == 0:
            raise InputError("letters must be nonzero")
        merged: dict[str, int] = {}
        for name, power in syms:
            merged[name] = merged.get(name, 0) + power
        self.coeff = coeff
        self.syms = tuple(sorted((k, v) for k, v in merged.items() if v))
        self._hash = hash((self.coeff, self.syms))

    @classmethod
    def symbol(cls, name: str) -> "Letter":
        return cls(1, ((name, 1),))

    @classmethod
    def coerce(cls, value) -> "Letter":
        if isinstance(value, Letter):
            return value
        if isinstance(value, str) and value.isidentifier():
            return cls.symbol(value)
        return cls(as_fraction(value))

    @property
    def is_rational(self) -> bool:
        return not self.syms

    @property
    def is_one(self) -> bool:
        return not self.syms and self.coeff == 1

    def __eq__(self, other):
        if not isinstance(other, Letter):
            try:
                other = Letter.coerce(other)
            except (TypeError, ValueError, InputError):
                return NotImplemented
        return self.coeff == other.coeff and self.syms == other.syms

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (len(self.syms), self.syms, self.coeff)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        other = Letter.coerce(other)
        return Letter(self.coeff * other.coeff, self.syms + other.syms)

    __rmul__ = __mul__

    def inverse(self) -> "Letter":
        return Letter(1 / self.coeff, tuple((k, -v) for k, v in self.syms))

    def __truediv__(self, other):
        return self * Letter.coerce(other).inverse()

    def __pow__(self, k: int) -> "Letter":
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        return Letter(self.coeff ** k, tuple((n, v * k) for n, v in self.syms))

    def __neg__(self):
        return Letter(-self.coeff, self.syms)

    def add(self, other) -> Letter | None:
        """Sum of two letters, ``None`` when it vanishes.

        Raises when the sum is not a monomial (e.g. ``1 - x`` with symbolic x).
        """
        other = Letter.coerce(other)
        if self.syms != other.syms:
            raise UnsupportedShapeError(
                f"letter sum {self} + {other} is not a monomial; use rational letters")
        c = self.coeff + other.coeff
        if c == 0:
            return None
        return Letter(c, self.syms)

    def abs_value(self) -> Fraction:
        if self.syms:
            raise UnsupportedShapeError(f"modulus of symbolic letter {self}")
        return abs(self.coeff)

    def substitute(self, bindings) -> "Letter":
        coeff = self.coeff
        rest = []
        for name, power in self.syms:
            if name in bindings:
                coeff *= as_fraction(bindings[name]) ** power
            else:
                rest.append((name, power))
        return Letter(coeff, rest)

    def __str__(self):
        parts = []
        for name, power in self.syms:
            parts.append(name if power == 1 else f"{name}^{power}")
        if not parts:
            return str(self.coeff)
        body = "*".join(parts)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return "-" + body
        return f"{self.coeff}*{body}"

    def __repr__(self):
        return f"Letter({self})"


ONE = Letter(1)
