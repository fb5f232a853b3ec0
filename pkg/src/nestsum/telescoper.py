"""Reduction of the four solvable sum classes to canonical S-sums.

All reductions funnel into :func:`sum_range`, which sums an expression in a
running index ``j`` between an integer lower limit and ``n + h``:

* poles are partial-fractioned and shifted onto ``1/j^e``; the inner sum is
  then synchronized, which peels off boundary terms of strictly smaller depth;
* ``x^j/j^e S(j; A)`` is by definition ``S(n+h; e, A; x, ...)`` minus a
  constant;
* polynomial factors ``j^k x^j`` are summed by parts, which again lowers the
  depth of the inner sum.

Convolutions, conjugations and binomial convolutions are turned into such
sums by first-order recurrences in ``n`` whose inhomogeneities have lower
weight or depth (Pascal's rule for the binomial kinds).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, SingularRecursionError, UnsupportedShapeError
from .kernel.constants import Const
from .kernel.letters import ONE as LETTER_ONE
from .kernel.letters import Letter
from .kernel.partial_fractions import partial_fraction, poly_mul, split_two_families
from .ssum import INF, Expression, Index, SSum, Term, canonicalize, evaluate_exact, ssum_value, synchronize
from .zeta import expression_limit

STEP_LIMIT = 10_000

_state = threading.local()


class _Budget:
    """Counts recursive reduction steps for one public call."""

    def __enter__(self):
        self.outer = getattr(_state, "steps", None) is None
        if self.outer:
            _state.steps = 0
        return self

    def __exit__(self, *exc):
        if self.outer:
            _state.steps = None


def _tick():
    steps = getattr(_state, "steps", None)
    if steps is None:
        return
    _state.steps = steps + 1
    if _state.steps > STEP_LIMIT:
        raise UnsupportedShapeError(f"reduction exceeded {STEP_LIMIT} steps")


# ---------------------------------------------------------------------------
# power sums


def _interpolate(points):
    """Ascending coefficients of the polynomial through ``[(x, y), ...]``."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis, denom = [Fraction(1)], Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k != i:
                basis = poly_mul(basis, [Fraction(-xk), Fraction(1)])
                denom *= xi - xk
        for d, b in enumerate(basis):
            coeffs[d] += yi * b / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@lru_cache(maxsize=None)
def _power_sum(k: int, letter: Letter):
    """Closed form of ``P(J) = sum_{i=1}^J i^k L^i``.

    Returns ``(q, c)`` meaning ``P(J) = L^J * sum_i q[i] J^i + c``.
    """
    if letter.is_one:
        pts = []
        acc = Fraction(0)
        for J in range(k + 2):
            if J:
                acc += Fraction(J) ** k
            pts.append((Fraction(J), acc))
        return tuple(_interpolate(pts)), Fraction(0)
    if not letter.is_rational:
        raise UnsupportedShapeError(f"polynomial summand with symbolic letter {letter}")
    L = letter.coeff
    inv = 1 / L
    q = [Fraction(0)] * (k + 1)
    for deg in range(k, -1, -1):
        rhs = Fraction(1 if deg == k else 0)
        acc = Fraction(0)
        for i in range(deg + 1, k + 1):
            acc += q[i] * _binom(i, deg) * (-1) ** (i - deg)
        q[deg] = (rhs + inv * acc) / (1 - inv)
    return tuple(q), -q[0]


def _binom(a, b):
    from math import comb
    return comb(a, b)


def _power_sum_value(k, letter, J: int):
    q, c = _power_sum(k, letter)
    lj = letter.coeff ** J if letter.is_rational else None
    poly = sum((qi * Fraction(J) ** i for i, qi in enumerate(q) if qi), Fraction(0))
    if letter.is_one:
        return poly + c
    return lj * poly + c


def _power_sum_expr(k, letter, shift, var):
    """``P(var + shift)`` as an expression."""
    q, c = _power_sum(k, letter)
    terms = {}
    lconst = Const.rational(1) if letter.is_one else Const.from_letter(letter, shift)
    for i, qi in enumerate(q):
        if qi:
            terms[Term.make(letter, {shift: -i})] = lconst * qi
    if c:
        terms[Term()] = Const.rational(c)
    return Expression(terms, var)


# ---------------------------------------------------------------------------
# the summation engine


def _const_sum_value(word, upper: int):
    weights = tuple(m for m, _ in word)
    letters = tuple(x for _, x in word)
    v = ssum_value(weights, letters, upper)
    return v if isinstance(v, Const) else Const.rational(v)


@lru_cache(maxsize=None)
def _sum_term(t: Term, lo: int, h: int, var: str) -> Expression:
    """``sum_{j=lo}^{var+h}`` of a single unit-coefficient term in ``j``."""
    _tick()
    if t.fact:
        raise UnsupportedShapeError("factorials of the summation index cannot be summed")
    if len(t.sums) > 1:
        raise ValueError("term must be canonical")
    s = t.sums[0] if t.sums else SSum(0, (), ())
    o = s.offset
    L = t.letter
    pref = Const.from_letter(L, -o) if o and not L.is_one else Const.rational(1)
    poles = {c - o: m for c, m in t.poles}
    lo, h = lo + o, h + o
    s = SSum(0, s.weights, s.letters)
    poly, parts = partial_fraction(poles)
    out = Expression.zero(var)
    for (d, e), alpha in sorted(parts.items()):
        if d == 0:
            out = out + _sum_base(e, L, s, lo, h, var).scale(alpha)
            continue
        # j' = j + d moves the pole onto 1/j'^e
        shifted = synchronize(SSum(-d, s.weights, s.letters), 0, "j") if s.depth else Expression.one("j")
        body = shifted.times_factor(L, {0: e})
        lpref = Const.from_letter(L, -d) if not L.is_one else Const.rational(1)
        out = out + sum_expr(body, lo + d, h + d, var).scale(lpref * alpha)
    for k, pk in enumerate(poly):
        if pk:
            out = out + _sum_poly(k, L, s, lo, h, var).scale(pk)
    return out.scale(pref)


def _sum_base(e, L, s, lo, h, var):
    """``sum_{j=lo}^{var+h} L^j/j^e S(j; s)``."""
    word = ((e, L),) + s.word
    if lo <= 0:
        if not s.depth:
            raise SingularRecursionError("summation range crosses the pole at j = 0")
        lo = 1
    full = Expression.monomial(sums=(SSum.from_word(h, word),), var=var)
    return full - Expression.const(_const_sum_value(word, lo - 1), var)


def _sum_poly(k, L, s, lo, h, var):
    """``sum_{j=lo}^{var+h} j^k L^j S(j; s)`` by summation by parts."""
    if s.depth and lo <= 0:
        lo = 1
    top = _power_sum_expr(k, L, h, var)
    low = _power_sum_value(k, L, lo - 1)
    if not s.depth:
        return top - Expression.const(low, var)
    top = top * Expression.monomial(sums=(SSum(h, s.weights, s.letters),), var=var)
    low_sum = _const_sum_value(s.word, lo - 1)
    (a1, x1), rest = s.word[0], s.word[1:]
    # P(j-1) * x1^j / j^a1 * S(j; rest)
    prev = _power_sum_expr(k, L, -1, "j")
    inner = prev * Expression.monomial(1, x1, {0: a1}, sums=(SSum.from_word(0, rest),) if rest else (), var="j")
    return top - Expression.const(low_sum * low, var) - sum_expr(inner, lo, h, var)


def normalize_offsets(e: Expression, target: int = 0) -> Expression:
    """Synchronize every sum of a canonical expression to ``var + target``."""
    out = Expression.zero(e.var)
    for t, c in e.terms.items():
        if not t.sums or t.sums[0].offset == target:
            out = out + Expression({t: c}, e.var)
            continue
        (s,) = t.sums
        rest = Expression.monomial(c, t.letter, dict(t.poles), t.fact, var=e.var)
        out = out + rest * synchronize(s, target, e.var)
    return canonicalize(out)


def sum_expr(e: Expression, lo: int, h: int, var: str = "n") -> Expression:
    """``sum_{j=lo}^{var+h} e(j)`` for an expression in the running index ``e.var``."""
    e = canonicalize(e)
    out = Expression.zero(var)
    for t, c in e.terms.items():
        out = out + _sum_term(t, int(lo), int(h), var).scale(c)
    return out


def sum_range(e: Expression, lo: int = 1, upper=None, var: str = "n") -> Expression:
    """``sum_{j=lo}^{upper} e(j)`` with ``upper`` an :class:`Index` (default ``var``) or infinity."""
    if upper is None:
        upper = Index(var)
    if isinstance(upper, str):
        upper = INF if upper == "inf" else Index(upper)
    with _Budget():
        if upper.is_infinite:
            return Expression.const(expression_limit(sum_expr(e, lo, 0, var)), var)
        return normalize_offsets(sum_expr(e, lo, upper.offset, upper.base), upper.offset)


# ---------------------------------------------------------------------------
# nested insertion


def reduce_insertion(x, m: int, inner: Expression, bound="n") -> Expression:
    """``sum_{j=1}^{bound} x^j/j^m * inner(j)`` as canonical S-sums."""
    x = Letter.coerce(x)
    if m < 0:
        raise InputError("weight must be nonnegative")
    if isinstance(bound, str):
        bound = INF if bound == "inf" else Index(bound)
    var = bound.base or "n"
    body = canonicalize(inner.with_var("j")).times_factor(x, {0: m} if m else None)
    return sum_range(body, 1, bound, var)


# ---------------------------------------------------------------------------
# convolution


def _word(weights, letters):
    return tuple(zip((int(m) for m in weights), (Letter.coerce(x) for x in letters)))


@lru_cache(maxsize=None)
def _conv(a, A, x, b, B, y) -> Expression:
    """``sum_{j=1}^{n-1} x^j/j^a S(j;A) * y^(n-j)/(n-j)^b S(n-j;B)`` in var n."""
    _tick()
    if a > 0 and b > 0:
        out = Expression.zero()
        for coeff, r, fam, i in split_two_families(a, b):
            part = _conv(i, A, x, 0, B, y) if fam == "u" else _conv(0, A, x, i, B, y)
            out = out + part.times_factor(poles={0: r}, coeff=coeff)
        return out
    if b == 0 and not B:
        body = Expression.monomial(1, x / y, {0: a} if a else None,
                                   sums=(SSum.from_word(0, A),) if A else (), var="j")
        return sum_expr(body, 1, -1, "n").times_factor(y)
    if a == 0 and not A:
        return _conv(b, B, y, a, A, x)
    if b == 0:
        (b1, y1), rest = B[0], B[1:]
        inner = _conv(a, A, x, b1, rest, y * y1).with_var("j")
        return sum_expr(inner.times_factor(y.inverse()), 1, 0, "n").times_factor(y)
    return _conv(b, B, y, a, A, x)


def convolve(m1, inner1, x1, m2, inner2, x2, n=None) -> Expression:
    """Convolution ``sum_{j=1}^{n-1} x1^j/j^m1 S(j;A) x2^(n-j)/(n-j)^m2 S(n-j;B)``.

    ``inner1``/``inner2`` are ``(weights, letters)`` pairs of the inner sums.
    With a concrete integer ``n`` the value is returned as a constant
    expression (zero for ``n < 2``).
    """
    A = _word(*inner1) if inner1 else ()
    B = _word(*inner2) if inner2 else ()
    _check_weights(m1, m2)
    with _Budget():
        result = normalize_offsets(_conv(int(m1), A, Letter.coerce(x1), int(m2), B, Letter.coerce(x2)))
    return _at(result, n)


def _check_weights(*ms):
    if any(int(m) < 1 for m in ms):
        raise InputError("outer weights must be positive integers")


def _at(result, n):
    if n is None:
        return result
    if n < 2:
        return Expression.zero()
    return Expression.const(evaluate_exact(result, n))


# ---------------------------------------------------------------------------
# conjugation


@lru_cache(maxsize=None)
def _binom_sum(w, A, z) -> Expression:
    """``sum_{j=1}^{n} C(n,j) z^j / j^w S(j; A)`` in var n (valid for n >= 1)."""
    _tick()
    if w >= 1:
        inner = _binom_sum(w - 1, A, z).with_var("j")
        return sum_expr(inner.times_factor(poles={0: 1}), 1, 0, "n")
    lam = z.add(1)
    if not A:
        if lam is None:
            return Expression.const(-1)
        return Expression.monomial(1, lam) - Expression.one()
    (a1, x1), rest = A[0], A[1:]
    inner = _binom_sum(a1 - 1, rest, z * x1)
    if lam is None:
        return inner.times_factor(poles={0: 1})
    body = inner.with_var("j").times_factor(lam.inverse(), {0: 1})
    return sum_expr(body, 1, 0, "n").times_factor(lam)


def conjugate(m, inner, x, n=None) -> Expression:
    """Conjugation ``-sum_{j=1}^{n} C(n,j) (-1)^j x^j/j^m S(j; A)``."""
    A = _word(*inner) if inner else ()
    _check_weights(m)
    with _Budget():
        result = normalize_offsets(-_binom_sum(int(m), A, -Letter.coerce(x)))
    if n is None:
        return result
    return Expression.zero() if n < 1 else Expression.const(evaluate_exact(result, n))


# ---------------------------------------------------------------------------
# binomial convolution


def _solve_first_order(lam, rhs: Expression) -> Expression:
    """``D(n) = lam D(n-1) + rhs(n)/n`` with ``D(0) = 0``."""
    if lam is None:
        return rhs.times_factor(poles={0: 1})
    body = rhs.with_var("j").times_factor(lam.inverse(), {0: 1})
    return sum_expr(body, 1, 0, "n").times_factor(lam)


@lru_cache(maxsize=None)
def _binconv(a, A, z, b, B, y) -> Expression:
    """``sum_{j=1}^{n-1} C(n,j) z^j/j^a S(j;A) y^(n-j)/(n-j)^b S(n-j;B)`` in var n."""
    _tick()
    if a > 0 and b > 0:
        out = Expression.zero()
        for coeff, r, fam, i in split_two_families(a, b):
            part = _binconv(i, A, z, 0, B, y) if fam == "u" else _binconv(0, A, z, i, B, y)
            out = out + part.times_factor(poles={0: r}, coeff=coeff)
        return out
    if b == 0 and not B:
        if a == 0 and not A:
            lam = z.add(y)
            full = Expression.monomial(1, lam) if lam is not None else Expression.zero()
            return full - Expression.monomial(1, y) - Expression.monomial(1, z)
        ratio = z / y
        whole = _binom_sum(a, A, ratio)
        last = Expression.monomial(1, ratio, {0: a} if a else None,
                                   sums=(SSum.from_word(0, A),) if A else ())
        return (whole - last).times_factor(y)
    if a == 0 and not A:
        return _binconv(b, B, y, a, A, z)
    if b == 0:
        (b1, y1), rest = B[0], B[1:]
        if a >= 1:
            rhs = _binconv(a - 1, A, z, 0, B, y) + _binconv(a, A, z, b1 - 1, rest, y * y1)
            return _solve_first_order(y, rhs)
        (a1, x1), restA = A[0], A[1:]
        rhs = _binconv(a1 - 1, restA, z * x1, 0, B, y) + _binconv(0, A, z, b1 - 1, rest, y * y1)
        return _solve_first_order(z.add(y), rhs)
    return _binconv(b, B, y, a, A, z)


def binomial_convolve(m1, inner1, x1, m2, inner2, x2, n=None) -> Expression:
    """Binomial convolution
    ``-sum_{j=1}^{n-1} C(n,j)(-1)^j x1^j/j^m1 S(j;A) x2^(n-j)/(n-j)^m2 S(n-j;B)``.
    """
    A = _word(*inner1) if inner1 else ()
    B = _word(*inner2) if inner2 else ()
    _check_weights(m1, m2)
    with _Budget():
        result = normalize_offsets(-_binconv(int(m1), A, -Letter.coerce(x1), int(m2), B, Letter.coerce(x2)))
    return _at(result, n)


# ---------------------------------------------------------------------------
# tasks


KINDS = ("insertion", "convolution", "conjugation", "binomial_convolution")


@dataclass(frozen=True)
class ReductionTask:
    kind: str
    weight: int
    letter: object = 1
    inner: tuple = ((), ())
    weight2: int = 0
    letter2: object = 1
    inner2: tuple = ((), ())
    bound: Index = field(default_factory=lambda: Index("n"))

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown reduction kind {self.kind!r}")

    def direct_value(self, n: int) -> Fraction:
        """Value by brute-force summation of the defining expression."""
        from math import comb

        def side(m, x, inner, j):
            x = Letter.coerce(x)
            ws, xs = inner
            return x.coeff ** j / Fraction(j) ** m * ssum_value(tuple(ws), tuple(Letter.coerce(v) for v in xs), j)

        if self.kind == "insertion":
            return sum((side(self.weight, self.letter, self.inner, j) for j in range(1, n + 1)), Fraction(0))
        if self.kind == "conjugation":
            return -sum((comb(n, j) * (-1) ** j * side(self.weight, self.letter, self.inner, j)
                         for j in range(1, n + 1)), Fraction(0))
        total = Fraction(0)
        for j in range(1, n):
            val = side(self.weight, self.letter, self.inner, j) * side(self.weight2, self.letter2, self.inner2, n - j)
            if self.kind == "binomial_convolution":
                val *= -comb(n, j) * (-1) ** j
            total += val
        return total


def reduce(task: ReductionTask) -> Expression:
    """Dispatch a :class:`ReductionTask` to its algorithm."""
    if task.kind == "insertion":
        ws, xs = task.inner
        inner = Expression.ssum(ws, xs, 0, "j") if ws else Expression.one("j")
        return reduce_insertion(task.letter, task.weight, inner, task.bound)
    if task.kind == "convolution":
        return convolve(task.weight, task.inner, task.letter, task.weight2, task.inner2, task.letter2)
    if task.kind == "conjugation":
        return conjugate(task.weight, task.inner, task.letter)
    return binomial_convolve(task.weight, task.inner, task.letter, task.weight2, task.inner2, task.letter2)


__all__ = [
    "sum_range", "sum_expr", "normalize_offsets", "reduce_insertion", "convolve", "conjugate", "binomial_convolve",
    "ReductionTask", "reduce", "KINDS", "STEP_LIMIT",
]
