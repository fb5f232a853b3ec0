"""Nested S-sums, expressions built from them, and their canonical form.

``S(n; m_1..m_k; x_1..x_k) = sum_{j=1}^n x_1^j / j^m_1 * S(j; m_2..m_k; x_2..x_k)``
with the empty sum equal to one.  Sums inside an :class:`Expression` have an
upper bound ``var + offset`` where ``var`` is the expression's running symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InputError, UnboundSymbolError, UnsynchronizedError
from .kernel.constants import Const, MzvSymbol
from .kernel.letters import ONE as LETTER_ONE
from .kernel.letters import Letter, as_fraction


@dataclass(frozen=True)
class Index:
    """Upper summation bound ``base + offset``; ``base=None`` means infinity."""

    base: str | None
    offset: int = 0

    def __post_init__(self):
        if self.base is None and self.offset:
            raise InputError("infinity admits no offset")

    @property
    def is_infinite(self) -> bool:
        return self.base is None

    def __str__(self):
        if self.base is None:
            return "inf"
        if self.offset == 0:
            return self.base
        return f"{self.base}{self.offset:+d}"


INF = Index(None)


@dataclass(frozen=True)
class SSum:
    """An S-sum whose upper bound is ``var + offset`` for the enclosing expression."""

    offset: int
    weights: tuple
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(m) for m in self.weights))
        object.__setattr__(self, "letters", tuple(Letter.coerce(x) for x in self.letters))
        if len(self.weights) != len(self.letters):
            raise InputError("weights/letters length mismatch")
        if any(m < 1 for m in self.weights):
            raise InputError("S-sum weights must be positive integers")

    @property
    def depth(self) -> int:
        return len(self.weights)

    @property
    def weight(self) -> int:
        return sum(self.weights)

    @property
    def word(self):
        return tuple(zip(self.weights, self.letters))

    @classmethod
    def from_word(cls, offset, word):
        return cls(offset, tuple(m for m, _ in word), tuple(x for _, x in word))

    def rest(self) -> "SSum":
        return SSum(self.offset, self.weights[1:], self.letters[1:])

    def shifted(self, k: int) -> "SSum":
        return SSum(self.offset + k, self.weights, self.letters)

    def sort_key(self):
        return (self.depth, self.weights, tuple(x.sort_key() for x in self.letters), self.offset)


@dataclass(frozen=True)
class Term:
    """Non-coefficient part of a term.

    ``letter**var * prod (var + c)^(-m) * Gamma(var + 1)**fact * prod sums``.
    A negative pole multiplicity denotes a polynomial factor.
    """

    letter: Letter = LETTER_ONE
    poles: tuple = ()
    fact: int = 0
    sums: tuple = ()

    @classmethod
    def make(cls, letter=LETTER_ONE, poles=None, fact=0, sums=()):
        pole_map = {}
        for c, m in (poles.items() if isinstance(poles, dict) else (poles or ())):
            pole_map[c] = pole_map.get(c, 0) + m
        return cls(Letter.coerce(letter), tuple(sorted((c, m) for c, m in pole_map.items() if m)),
                   int(fact), tuple(sorted((s for s in sums if s.depth), key=SSum.sort_key)))

    def times(self, other: "Term") -> "Term":
        poles = dict(self.poles)
        for c, m in other.poles:
            poles[c] = poles.get(c, 0) + m
        return Term.make(self.letter * other.letter, poles, self.fact + other.fact, self.sums + other.sums)

    @property
    def depth(self) -> int:
        return sum(s.depth for s in self.sums)

    @property
    def pole_order(self) -> int:
        return sum(m for _, m in self.poles)

    def sort_key(self):
        return (-self.depth, tuple(s.sort_key() for s in self.sums), self.poles,
                self.letter.sort_key(), self.fact)


class Expression:
    """Finite linear combination of :class:`Term` with :class:`Const` coefficients."""

    __slots__ = ("var", "terms")

    def __init__(self, terms=None, var: str = "n"):
        self.var = var
        clean = {}
        for t, c in (terms or {}).items():
            if not isinstance(c, Const):
                c = Const.rational(c)
            if t in clean:
                c = clean[t] + c
            clean[t] = c
        self.terms: dict = {t: c for t, c in clean.items() if not c.is_zero()}

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value, var="n") -> "Expression":
        c = value if isinstance(value, Const) else Const.rational(value)
        return cls({Term(): c}, var)

    @classmethod
    def zero(cls, var="n") -> "Expression":
        return cls({}, var)

    @classmethod
    def one(cls, var="n") -> "Expression":
        return cls.const(1, var)

    @classmethod
    def monomial(cls, coeff=1, letter=LETTER_ONE, poles=None, fact=0, sums=(), var="n"):
        c = coeff if isinstance(coeff, Const) else Const.rational(coeff)
        return cls({Term.make(letter, poles, fact, sums): c}, var)

    @classmethod
    def ssum(cls, weights, letters, offset=0, var="n") -> "Expression":
        return cls.monomial(sums=(SSum(offset, weights, letters),), var=var)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(t == Term() for t in self.terms)

    def constant_value(self) -> Const:
        if not self.is_constant():
            raise ValueError("expression depends on the running symbol")
        return self.terms.get(Term(), Const())

    def items(self):
        return sorted(self.terms.items(), key=lambda tc: tc[0].sort_key())

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expression.const(other, self.var)
        if not isinstance(other, Expression):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Expression":
        if isinstance(other, Expression):
            if other.var != self.var and not other.is_constant() and not self.is_constant():
                raise InputError(f"cannot combine expressions in {self.var} and {other.var}")
            return other
        return Expression.const(other, self.var)

    def _var_with(self, other):
        return self.var if not self.is_constant() or other.is_constant() else other.var

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return Expression(out, self._var_with(other))

    __radd__ = __add__

    def __neg__(self):
        return Expression({t: -c for t, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> "Expression":
        if not isinstance(factor, Const):
            factor = Const.rational(factor)
        if factor.is_zero():
            return Expression.zero(self.var)
        return Expression({t: c * factor for t, c in self.terms.items()}, self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Const)):
            return self.scale(other)
        other = self._coerce(other)
        var = self._var_with(other)
        out: dict = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = t1.times(t2)
                c = c1 * c2
                out[t] = out[t] + c if t in out else c
        return canonicalize(Expression(out, var))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Expression.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def times_factor(self, letter=LETTER_ONE, poles=None, fact=0, coeff=1) -> "Expression":
        """Multiply by ``coeff * letter**var * poles * Gamma(var+1)**fact`` (no sums)."""
        return self * Expression.monomial(coeff, letter, poles, fact, var=self.var)

    def with_var(self, var: str) -> "Expression":
        return Expression(self.terms, var)

    def map_coefficients(self, fn) -> "Expression":
        return Expression({t: fn(c) for t, c in self.terms.items()}, self.var)

    # structure ----------------------------------------------------------
    @property
    def max_depth(self) -> int:
        return max((t.depth for t in self.terms), default=0)

    def ssums(self):
        return [s for t in self.terms for s in t.sums]

    def __str__(self):
        from .printer import format_expression
        return format_expression(self)

    def __repr__(self):
        return f"Expression({self})"


# ---------------------------------------------------------------------------
# quasi-shuffle product


@lru_cache(maxsize=None)
def stuffle_words(a: tuple, b: tuple):
    """Quasi-shuffle of two words of ``(weight, letter)`` pairs.

    Returns a tuple of ``(word, multiplicity)``.  The diagonal enters with a
    minus sign because nesting is non-strict.
    """
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict = {}
    for w, c in stuffle_words(a[1:], b):
        acc[(a[0],) + w] = acc.get((a[0],) + w, 0) + c
    for w, c in stuffle_words(a, b[1:]):
        acc[(b[0],) + w] = acc.get((b[0],) + w, 0) + c
    head = (a[0][0] + b[0][0], a[0][1] * b[0][1])
    for w, c in stuffle_words(a[1:], b[1:]):
        acc[(head,) + w] = acc.get((head,) + w, 0) - c
    return tuple((w, c) for w, c in acc.items() if c)


def stuffle_product(a: SSum, b: SSum, var: str = "n") -> Expression:
    """Product of two S-sums with the same upper bound as single nested sums."""
    if a.offset != b.offset:
        raise UnsynchronizedError(
            f"unsynchronized operands: upper bounds {var}{a.offset:+d} and {var}{b.offset:+d}")
    out = {}
    for word, c in stuffle_words(a.word, b.word):
        t = Term.make(sums=(SSum.from_word(a.offset, word),))
        out[t] = out.get(t, 0) + c
    return Expression({t: Const.rational(c) for t, c in out.items()}, var)


# ---------------------------------------------------------------------------
# synchronization


@lru_cache(maxsize=None)
def _sync_cached(s: SSum, target: int, var: str) -> Expression:
    if s.depth == 0:
        return Expression.one(var)
    if s.offset == target:
        return Expression.monomial(sums=(s,), var=var)
    m1, x1 = s.weights[0], s.letters[0]
    if s.offset > target:
        # S(v+o) = S(v+o-1) + x1^(v+o) (v+o)^(-m1) S(v+o; rest)
        o = s.offset
        head = _sync_cached(s.shifted(-1), target, var)
        boundary = Expression.monomial(Const.from_letter(x1, o), x1, {o: m1}, var=var)
        return head + boundary * _sync_cached(s.rest(), target, var) if s.depth > 1 else head + boundary
    # S(v+o) = S(v+o+1) - x1^(v+o+1) (v+o+1)^(-m1) S(v+o+1; rest)
    o = s.offset + 1
    head = _sync_cached(s.shifted(1), target, var)
    boundary = Expression.monomial(Const.from_letter(x1, o), x1, {o: m1}, var=var)
    rest = SSum(o, s.weights[1:], s.letters[1:])
    return head - (boundary * _sync_cached(rest, target, var) if s.depth > 1 else boundary)


def synchronize(s: SSum, target_offset: int, var: str = "n") -> Expression:
    """Rewrite ``s`` in sums with upper bound ``var + target_offset`` plus boundary terms."""
    if isinstance(s, MzvSymbol):
        raise InputError("cannot synchronize infinity")
    return _sync_cached(s, int(target_offset), var)


# ---------------------------------------------------------------------------
# canonical form


def _canonical_term(term: Term, coeff: Const, var: str) -> Expression:
    sums = [s for s in term.sums if s.depth]
    bare = Term.make(term.letter, term.poles, term.fact)
    if len(sums) <= 1:
        return Expression({Term.make(term.letter, term.poles, term.fact, sums): coeff}, var)
    target = min(s.offset for s in sums)
    acc = Expression({bare: coeff}, var)
    for s in sums:
        acc = _product_single_sums(acc, synchronize(s, target, var))
    return acc


def _product_single_sums(a: Expression, b: Expression) -> Expression:
    """Product of expressions whose terms carry at most one sum each, all at one offset."""
    out: dict = {}
    var = a._var_with(b)
    for t1, c1 in a.terms.items():
        for t2, c2 in b.terms.items():
            base = Term.make(t1.letter * t2.letter, _merge_poles(t1.poles, t2.poles), t1.fact + t2.fact)
            c = c1 * c2
            if t1.sums and t2.sums:
                for t, k in stuffle_product(t1.sums[0], t2.sums[0], var).terms.items():
                    key = Term.make(base.letter, base.poles, base.fact, t.sums)
                    out[key] = out[key] + c * k if key in out else c * k
            else:
                key = Term.make(base.letter, base.poles, base.fact, t1.sums + t2.sums)
                out[key] = out[key] + c if key in out else c
    return Expression(out, var)


def _merge_poles(p, q):
    d = dict(p)
    for c, m in q:
        d[c] = d.get(c, 0) + m
    return d


@lru_cache(maxsize=None)
def _rational_basis(poles: tuple) -> tuple:
    """``prod (var+c)^(-m)`` as ``((poles, coeff), ...)`` in the basis ``var^k``, ``(var+c)^(-e)``."""
    from .kernel.partial_fractions import partial_fraction

    poly, parts = partial_fraction(dict(poles))
    out = [((((0, -k),) if k else ()), c) for k, c in enumerate(poly) if c]
    out += [(((c, e),), v) for (c, e), v in sorted(parts.items()) if v]
    return tuple(out)


def _is_basis(poles: tuple) -> bool:
    return len(poles) <= 1 and all(m > 0 or c == 0 for c, m in poles)


def _rational_normal(e: Expression) -> Expression:
    out: dict = {}
    for t, c in e.terms.items():
        if _is_basis(t.poles):
            out[t] = out[t] + c if t in out else c
            continue
        for poles, k in _rational_basis(t.poles):
            key = Term(t.letter, poles, t.fact, t.sums)
            out[key] = out[key] + c * k if key in out else c * k
    return Expression(out, e.var)


def canonicalize(e: Expression) -> Expression:
    """Eliminate products of sums, synchronize bounds inside each term, drop zeros.

    The rational factor of every term is also brought to the basis of powers
    ``var^k`` and single poles ``(var+c)^(-e)``.
    """
    if all(len(t.sums) <= 1 and _is_basis(t.poles) for t in e.terms):
        return Expression(e.terms, e.var)
    out = Expression.zero(e.var)
    for t, c in e.terms.items():
        out = out + _canonical_term(t, c, e.var)
    return _rational_normal(out)


# ---------------------------------------------------------------------------
# exact evaluation at a concrete integer


def _letter_power(x: Letter, j: int):
    if x.is_rational:
        return x.coeff ** j
    return Const.from_letter(x, j)


@lru_cache(maxsize=4096)
def ssum_value(weights: tuple, letters: tuple, upper: int):
    """Exact value of ``S(upper; weights; letters)`` by direct recursion."""
    if not weights:
        return Fraction(1)
    if upper < 1:
        return Fraction(0)
    col = [Fraction(1)] * (upper + 1)
    for m, x in zip(reversed(weights), reversed(letters)):
        new = [Fraction(0)] * (upper + 1)
        acc = Fraction(0)
        for j in range(1, upper + 1):
            acc = acc + _letter_power(x, j) * col[j] * Fraction(1, j ** m)
            new[j] = acc
        col = new
    return col[upper]


def evaluate_exact(e: Expression, n: int | None = None, bindings=None) -> Const:
    """Value of ``e`` at ``var = n`` with free symbols bound; constants stay symbolic."""
    bindings = dict(bindings or {})
    if n is None and e.var in bindings:
        n = bindings.pop(e.var)
    if n is None and not e.is_constant():
        raise UnboundSymbolError(f"unbound symbol {e.var}")
    total = Const()
    for t, c in e.terms.items():
        val = c.substitute(bindings)
        if t == Term():
            total = total + val
            continue
        n = int(n)
        factor = Fraction(1)
        x = t.letter.substitute(bindings)
        val = val * _letter_power(x, n) if not x.is_one else val
        for off, m in t.poles:
            if n + off == 0 and m > 0:
                raise ZeroDivisionError(f"pole ({e.var}{off:+d}) vanishes at {e.var}={n}")
            factor *= Fraction(n + off) ** (-m)
        if t.fact:
            if n < 0:
                raise ValueError("factorial of a negative integer")
            factor *= Fraction(factorial(n)) ** t.fact
        for s in t.sums:
            letters = tuple(y.substitute(bindings) for y in s.letters)
            v = ssum_value(s.weights, letters, n + s.offset)
            val = val * v
        total = total + val * factor
    return total


def evaluate_rational(e: Expression, n: int | None = None, bindings=None) -> Fraction:
    c = evaluate_exact(e, n, bindings)
    if not c.is_rational():
        raise UnboundSymbolError(f"value {c} still contains symbols or constants")
    return c.rational_value()


def S(upper, weights, letters):
    """Convenience constructor; ``upper`` is an :class:`Index`, a symbol name or ``'inf'``."""
    if isinstance(upper, str):
        upper = INF if upper == "inf" else Index(upper)
    if upper.is_infinite:
        from .zeta import check_convergent
        sym = MzvSymbol(tuple(weights), tuple(letters))
        check_convergent(sym)
        return Expression.const(Const.atom(sym))
    return Expression.ssum(weights, letters, upper.offset, upper.base)


__all__ = [
    "INF", "Index", "SSum", "Term", "Expression", "S", "stuffle_words", "stuffle_product",
    "synchronize", "canonicalize", "evaluate_exact", "evaluate_rational", "ssum_value",
    "as_fraction",
]
