"""The coefficient ring: rationals extended by commuting constant atoms.

Atoms are free symbols (letters such as ``x``), Euler's constant and
multiple zeta / polylogarithm symbols ``S(inf; m; x)``.  Elements are
Laurent polynomials in the atoms with exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .letters import Letter, as_fraction


@dataclass(frozen=True)
class Symbol:
    name: str

    def sort_key(self):
        return (0, self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class EulerGamma:
    def sort_key(self):
        return (1,)

    def __str__(self):
        return "gamma_E"


@dataclass(frozen=True)
class MzvSymbol:
    """The convergent constant ``S(inf; m_1..m_k; x_1..x_k)``.

    Nesting is non-strict, exactly as for finite S-sums.  ``S(inf;k;1)`` is
    the Riemann zeta value and ``S(inf;1;1/2)`` is ``ln 2``.
    """

    weights: tuple
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(m) for m in self.weights))
        object.__setattr__(self, "letters", tuple(Letter.coerce(x) for x in self.letters))
        if len(self.weights) != len(self.letters):
            from ..errors import InputError
            raise InputError("weights/letters length mismatch")

    @property
    def depth(self) -> int:
        return len(self.weights)

    @property
    def weight(self) -> int:
        return sum(self.weights)

    def sort_key(self):
        return (2, self.depth, self.weights, tuple(x.sort_key() for x in self.letters))

    def substitute(self, bindings) -> "MzvSymbol":
        return MzvSymbol(self.weights, tuple(x.substitute(bindings) for x in self.letters))

    def __str__(self):
        w = ",".join(map(str, self.weights))
        x = ",".join(map(str, self.letters))
        return f"S(inf;{w};{x})"


def zeta(k: int) -> MzvSymbol:
    return MzvSymbol((k,), (Letter(1),))


def _norm_monomial(factors):
    acc: dict = {}
    for atom, power in factors:
        acc[atom] = acc.get(atom, 0) + power
    return tuple(sorted(((a, p) for a, p in acc.items() if p), key=lambda t: t[0].sort_key()))


class Const:
    """Immutable Laurent polynomial over constant atoms with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self.terms: dict = clean
        self._hash = None

    @classmethod
    def rational(cls, value) -> "Const":
        return cls({(): as_fraction(value)})

    @classmethod
    def atom(cls, atom, power: int = 1, coeff=1) -> "Const":
        return cls({_norm_monomial([(atom, power)]): as_fraction(coeff)})

    @classmethod
    def from_letter(cls, letter: Letter, power: int = 1) -> "Const":
        lp = letter ** power
        return cls({_norm_monomial([(Symbol(n), p) for n, p in lp.syms]): lp.coeff})

    # ring structure -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(m == () for m in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a pure rational")
        return self.terms.get((), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Const.rational(other)
        if not isinstance(other, Const):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Const(out)

    __radd__ = __add__

    def __neg__(self):
        return Const({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _norm_monomial(m1 + m2) if m1 and m2 else (m1 or m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Const(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomial constants can be inverted")
            (m, c), = self.terms.items()
            return Const({tuple((a, -p) for a, p in m): 1 / c}) ** (-k)
        out = Const.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def atoms(self) -> set:
        return {a for m in self.terms for a, _ in m}

    def substitute(self, bindings) -> "Const":
        """Bind free symbols (also inside polylogarithm letters) to rationals."""
        if not bindings:
            return self
        out = Const()
        for mono, c in self.terms.items():
            piece = Const.rational(c)
            for atom, power in mono:
                if isinstance(atom, Symbol) and atom.name in bindings:
                    piece = piece * Const.rational(as_fraction(bindings[atom.name]) ** power)
                elif isinstance(atom, MzvSymbol):
                    piece = piece * Const.atom(atom.substitute(bindings), power)
                else:
                    piece = piece * Const.atom(atom, power)
            out = out + piece
        return out

    def sorted_items(self):
        def key(item):
            mono = item[0]
            return (sum(abs(p) for _, p in mono), tuple((a.sort_key(), p) for a, p in mono))
        return sorted(self.terms.items(), key=key)

    def __str__(self):
        from ..printer import format_const
        return format_const(self)

    def __repr__(self):
        return f"Const({self})"


def _coerce(value) -> Const:
    if isinstance(value, Const):
        return value
    return Const.rational(value)


ZERO = Const()
ONE = Const.rational(1)
GAMMA_E = Const.atom(EulerGamma())
