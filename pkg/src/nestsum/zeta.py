"""Sums at infinity: convergence, limits, constant stuffles and numerics.

Numerical values of ``S(inf; m; x)`` are obtained in one of two ways.

* If every partial product ``|x_1 ... x_i|`` is below one the nested series
  converges geometrically and is summed directly; the tail is bounded by
  ``sum_{j>N} rho^j j^(k-1)``.
* Otherwise the sum is split into strict multiple polylogarithms, written as
  iterated integrals ``G(z_1..z_w; 1)`` and evaluated with the Hoelder
  convolution at ``p = 2``, where each factor is again a geometrically
  convergent series.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product

import mpmath

from .errors import DivergenceError, UnboundSymbolError, UnsupportedShapeError
from .kernel.constants import Const, MzvSymbol
from .kernel.letters import Letter
from .ssum import Expression, SSum, Term, stuffle_words


def check_convergent(sym: MzvSymbol) -> None:
    """Raise :class:`DivergenceError` unless ``S(inf; m; x)`` converges.

    Symbolic letters are assumed to satisfy ``|x| <= 1``; only the harmonic
    head ``m_1 = 1, x_1 = 1`` is rejected for them.
    """
    if not sym.weights:
        return
    if sym.weights[0] == 1 and sym.letters[0].is_one:
        raise DivergenceError(f"divergent limit: {sym} has leading (1, 1)")
    prod_ = Fraction(1)
    for x in sym.letters:
        if not x.is_rational:
            return
        prod_ *= x.coeff
        if abs(prod_) > 1:
            raise DivergenceError(f"divergent limit: partial letter product {prod_} exceeds one in {sym}")


def is_convergent(sym: MzvSymbol) -> bool:
    try:
        check_convergent(sym)
    except DivergenceError:
        return False
    return True


def limit_to_infinity(s: SSum) -> MzvSymbol:
    """``lim_{n->oo} S(n + offset; m; x)`` as a constant symbol."""
    sym = MzvSymbol(s.weights, s.letters)
    check_convergent(sym)
    return sym


def expression_limit(e: Expression) -> Const:
    """Limit ``var -> oo`` of an expression; raises when a term diverges."""
    total = Const()
    for t, c in e.terms.items():
        if t == Term():
            total = total + c
            continue
        if t.fact < 0:
            continue
        if t.fact > 0:
            raise DivergenceError("divergent coefficient: factorial growth")
        x = t.letter
        if not x.is_one:
            if not x.is_rational:
                continue  # |x| < 1 is the caller's obligation for symbolic powers
            if abs(x.coeff) < 1:
                continue
            if abs(x.coeff) > 1 or t.pole_order <= 0:
                raise DivergenceError(f"divergent coefficient: ({x})^{e.var} does not decay")
            continue
        order = t.pole_order
        if order > 0:
            continue
        if order < 0:
            raise DivergenceError("divergent coefficient: polynomial growth")
        if not t.sums:
            total = total + c
            continue
        (s,) = t.sums
        if s.weights[0] == 1 and s.letters[0].is_one:
            raise DivergenceError(f"divergent coefficient: S({e.var};{s.weights};...) has no finite limit")
        total = total + c * Const.atom(limit_to_infinity(s))
    return total


# ---------------------------------------------------------------------------
# stuffles of constants


def constant_stuffle(a: MzvSymbol, b: MzvSymbol) -> Const:
    """Product of two convergent constants as a combination of single symbols."""
    check_convergent(a)
    check_convergent(b)
    out = Const()
    wa = tuple(zip(a.weights, a.letters))
    wb = tuple(zip(b.weights, b.letters))
    for word, c in stuffle_words(wa, wb):
        if not word:
            out = out + c
            continue
        sym = MzvSymbol(tuple(m for m, _ in word), tuple(x for _, x in word))
        if not is_convergent(sym):
            raise DivergenceError(f"divergent product term {sym}")
        out = out + Const.atom(sym, 1, c)
    return out


def _contractions(word):
    """All ways of merging consecutive entries; yields ``(merged_word, merges)``."""
    k = len(word)
    for cuts in product((False, True), repeat=max(k - 1, 0)):
        blocks, cur = [], [word[0]]
        for i, merge in enumerate(cuts):
            if merge:
                cur.append(word[i + 1])
            else:
                blocks.append(cur)
                cur = [word[i + 1]]
        blocks.append(cur)
        merged = []
        for blk in blocks:
            m = sum(w for w, _ in blk)
            x = blk[0][1]
            for _, y in blk[1:]:
                x = x * y
            merged.append((m, x))
        yield tuple(merged), sum(cuts)


def strict_mzv(weights, letters=None) -> Const:
    """Strict-inequality sum ``sum_{i_1 > ... > i_k}`` in terms of S-sums at infinity.

    ``strict_mzv((5, 3))`` is the conventional ``zeta(5,3)`` and equals
    ``S(inf;5,3;1,1) - S(inf;8;1)``.
    """
    letters = letters or (1,) * len(weights)
    word = tuple(zip(weights, (Letter.coerce(x) for x in letters)))
    out = Const()
    for merged, merges in _contractions(word):
        sym = MzvSymbol(tuple(m for m, _ in merged), tuple(x for _, x in merged))
        out = out + Const.atom(sym, 1, (-1) ** merges)
    return out


# ---------------------------------------------------------------------------
# numerics

_CACHE: dict = {}
_LOCK = threading.Lock()


def _tail_cutoff(rho, depth, tol):
    """Smallest power-of-two N with ``sum_{j>N} rho^j j^(depth-1) < tol``."""
    n = 16
    while True:
        q = rho * ((n + 2) / (n + 1)) ** (depth - 1)
        if q < 1:
            bound = rho ** (n + 1) * (n + 1) ** (depth - 1) / (1 - q)
            if bound < tol:
                return n, bound
        n *= 2
        if n > 1 << 22:
            raise UnsupportedShapeError("letters too close to the unit circle for direct summation")


def _nested_sum(weights, letters, n, strict):
    """Truncated nested sum in mpmath floats (non-strict or strict nesting)."""
    col = [mpmath.mpf(1)] * (n + 1)
    for level, (m, x) in enumerate(zip(reversed(weights), reversed(letters))):
        new = [mpmath.mpf(0)] * (n + 1)
        acc = mpmath.mpf(0)
        xp = mpmath.mpf(1)
        x = mpmath.mpf(x.numerator) / x.denominator
        for j in range(1, n + 1):
            xp *= x
            inner = col[j - 1] if (strict and level > 0) else col[j]
            acc += xp * inner / mpmath.mpf(j) ** m
            new[j] = acc
        col = new
    return col[n]


def _direct(weights, letters, digits, strict=False):
    rho, p = 0.0, Fraction(1)
    for x in letters:
        p *= x
        rho = max(rho, float(abs(p)))
    tol = 10.0 ** (-(digits + 2))
    n, _ = _tail_cutoff(rho, len(weights), tol)
    return _nested_sum(weights, letters, n, strict)


@lru_cache(maxsize=None)
def _g_value(word: tuple, y: Fraction, digits: int):
    """``G(word; y)`` for rational letters, word possibly with trailing zeros."""
    if not word:
        return mpmath.mpf(1)
    if all(a == 0 for a in word):
        r = len(word)
        return mpmath.log(mpmath.mpf(y.numerator) / y.denominator) ** r / mpmath.factorial(r)
    if word[-1] == 0:
        r = 0
        while word[-1 - r] == 0:
            r += 1
        head = word[: len(word) - r]
        k = len(head)
        base = head + (0,) * (r - 1)
        val = _g_value((0,), y, digits) * _g_value(base, y, digits)
        for i in range(k):
            val -= _g_value(head[:i] + (0,) + head[i:] + (0,) * (r - 1), y, digits)
        return val / r
    # G_{m}(z; y) = (-1)^k Li_m(y/z_1, z_1/z_2, ...)
    weights, zs = [], []
    m = 0
    for a in word:
        m += 1
        if a != 0:
            weights.append(m)
            zs.append(a)
            m = 0
    args = [y / zs[0]] + [zs[i - 1] / zs[i] for i in range(1, len(zs))]
    rho, p = 0.0, Fraction(1)
    for a in args:
        p *= a
        rho = max(rho, float(abs(p)))
    if rho >= 1:
        raise UnsupportedShapeError(f"letters {word} leave the convergence region of the Hoelder split")
    val = _direct(tuple(weights), tuple(args), digits, strict=True)
    return (-1) ** len(zs) * val


def _hoelder(word, digits):
    """``G(word; 1)`` via the Hoelder convolution with p = 2."""
    half = Fraction(1, 2)
    total = mpmath.mpf(0)
    w = len(word)
    for j in range(w + 1):
        left = tuple(1 - a for a in reversed(word[:j]))
        right = tuple(word[j:])
        total += (-1) ** j * _g_value(left, half, digits) * _g_value(right, half, digits)
    return total


def _strict_li_value(weights, letters, digits):
    """Strict ``sum_{i_1>...>i_k} prod x_l^{i_l}/i_l^{m_l}``."""
    rho, p, partial = 0.0, Fraction(1), []
    for x in letters:
        p *= x
        partial.append(p)
        rho = max(rho, float(abs(p)))
    if rho < 1:
        return _direct(weights, letters, digits, strict=True)
    word = []
    for m, pp in zip(weights, partial):
        word.extend([Fraction(0)] * (m - 1))
        word.append(1 / pp)
    return (-1) ** len(weights) * _hoelder(tuple(word), digits)


def mzv_numeric(sym: MzvSymbol, digits: int = 30, bindings=None):
    """Value of ``S(inf; m; x)`` as an mpmath float with error below ``10^-digits``."""
    if bindings:
        sym = sym.substitute(bindings)
    if any(not x.is_rational for x in sym.letters):
        raise UnboundSymbolError(f"unbound symbol in letters of {sym}")
    check_convergent(sym)
    if not sym.weights:
        return mpmath.mpf(1)
    key = (sym, digits)
    with _LOCK:
        if key in _CACHE:
            return _CACHE[key]
    with mpmath.workdps(digits + 20):
        letters = tuple(x.coeff for x in sym.letters)
        rho, p = 0.0, Fraction(1)
        for x in letters:
            p *= x
            rho = max(rho, float(abs(p)))
        if rho < 1:
            value = _direct(sym.weights, letters, digits + 5)
        else:
            value = mpmath.mpf(0)
            word = tuple(zip(sym.weights, letters))
            for merged, _ in _contractions(word):
                ws = tuple(m for m, _ in merged)
                xs = tuple(x for _, x in merged)
                value += _strict_li_value(ws, xs, digits + 5)
        value = +value
    with _LOCK:
        _CACHE[key] = value
    return value
