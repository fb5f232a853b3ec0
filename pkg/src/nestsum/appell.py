"""Double-series part of the Appell functions F1 and F2.

With ``j = m1``, ``k = m2`` and ``M = j + k`` the summands factor as

    F1:  (a)_M/(c)_M       * (b1)_j/j!       * (b2)_k/k!
    F2:  (a)_M/M! * C(M,j) * (b1)_j/(c1)_j   * (b2)_k/(c2)_k

The edges ``j = 0`` and ``k = 0`` are 2F1 series.  For ``j, k >= 1`` every
factor is expanded in eps, the inner sum over ``j`` is a (binomial)
convolution in ``M`` and the outer sum over ``M`` runs to infinity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import UnsupportedShapeError
from .gamma import GammaAtom, gamma_ratio_expand
from .kernel.constants import Const
from .kernel.letters import Letter
from .kernel.partial_fractions import partial_fraction
from .kernel.series import LaurentSeries
from .ssum import Expression, SSum, Term, canonicalize, evaluate_exact, synchronize
from .telescoper import _Budget, _binconv, _conv, normalize_offsets, sum_range


def shift_var(e: Expression, s: int) -> Expression:
    """``e(var + s)`` as an expression in ``var``."""
    out = {}
    for t, c in e.terms.items():
        if t.fact:
            raise UnsupportedShapeError("cannot shift a factorial of the index")
        if s and not t.letter.is_one:
            c = c * Const.from_letter(t.letter, s)
        nt = Term.make(t.letter, {off + s: m for off, m in t.poles}, 0, tuple(x.shifted(s) for x in t.sums))
        out[nt] = out[nt] + c if nt in out else c
    return canonicalize(Expression(out, e.var))


def _factor_series(upper, lower, with_factorial, order, var):
    """eps-series of ``prod (a)_m / prod (b)_m [/ m!]`` for ``m >= 1``; None if it vanishes."""
    from .special import _summand_atoms

    parts = _summand_atoms(upper, lower)
    if parts is None:
        return None
    atoms, eps_power, scale = parts
    if with_factorial:
        atoms.append(GammaAtom(1, 1, 0, -1))
    body = gamma_ratio_expand(atoms, order - eps_power, var)
    return body.scale(Expression.const(scale, var)).shift(eps_power)


def _pieces(t: Term):
    """Split a term in one index into ``(coeff, offset d, power e, word)`` pieces with poles ``(j+d)^-e``."""
    if t.fact:
        raise UnsupportedShapeError("factorials left in the Appell summand")
    word = t.sums[0].word if t.sums else ()
    if t.sums and t.sums[0].offset:
        raise ValueError("sums must be normalized to offset 0")
    poly, parts = partial_fraction(dict(t.poles))
    if len(poly) > 1:
        raise UnsupportedShapeError("Appell summand grows polynomially in one index; not reducible by convolution")
    out = [(c, d, e, word) for (d, e), c in sorted(parts.items())]
    if poly and poly[0]:
        out.append((poly[0], 0, 0, word))
    return out


def _binom_poly(n_offset: int, k: int) -> Expression:
    """``C(n + n_offset, k)`` as a polynomial expression in ``n``."""
    poles = {}
    for i in range(k):
        poles[n_offset - i] = poles.get(n_offset - i, 0) - 1
    return Expression.monomial(Fraction(1, factorial(k)), poles=poles)


def _side(d, e, word, letter):
    """``letter^J / J^e * S(J - d; word)`` synchronized to terms ``(coeff, letter, e', word')`` in J."""
    base = synchronize(SSum.from_word(-d, word), 0, "j") if word else Expression.one("j")
    body = base.times_factor(letter, {0: e} if e else None)
    out = []
    for t, c in canonicalize(body).terms.items():
        w = t.sums[0].word if t.sums else ()
        poles = dict(t.poles)
        if set(poles) - {0} or poles.get(0, 0) < 0:
            raise ValueError("unexpected pole after synchronization")
        out.append((c, t.letter, poles.get(0, 0), w, body))
    return out, body


@lru_cache(maxsize=None)
def _piece_conv(d1, e1, A, x, d2, e2, B, y, binomial):
    """``sum_{j=1}^{M-1} [C(M,j)] x^j (j+d1)^-e1 S(j;A) y^k (k+d2)^-e2 S(k;B)``, k = M-j, in var n = M."""
    s = d1 + d2
    left, fbody = _side(d1, e1, A, x)
    right, gbody = _side(d2, e2, B, y)
    if binomial:
        # C(M,j) = C(M+s, J) (J-d1+1)_d1 (K-d2+1)_d2 / (M+1)_s with J = j+d1, K = k+d2
        lpoly = {-i: -1 for i in range(d1)}
        rpoly = {-i: -1 for i in range(d2)}
        left, fbody = _with_poly(fbody, lpoly)
        right, gbody = _with_poly(gbody, rpoly)
    total = Expression.zero()
    for c1, l1, a, w1, _ in left:
        for c2, l2, b, w2, _ in right:
            part = (_binconv if binomial else _conv)(a, w1, l1, b, w2, l2)
            total = total + part.scale(c1 * c2)
    # remove J = 1..d1 and K = 1..d2, which lie outside the original range
    for J in range(1, d1 + 1):
        fj = evaluate_exact(fbody, J)
        g = shift_var(gbody.with_var("n"), -J)
        if binomial:
            g = g * _binom_poly(0, J)
        total = total - g.scale(fj)
    for K in range(1, d2 + 1):
        gk = evaluate_exact(gbody, K)
        f = shift_var(fbody.with_var("n"), -K)
        if binomial:
            f = f * _binom_poly(0, K)
        total = total - f.scale(gk)
    # back from N' = M + s to M; the letter powers x^(-d1) y^(-d2) undo the index shifts
    out = shift_var(normalize_offsets(total), s)
    pref = Const.rational(1)
    if d1 and not x.is_one:
        pref = pref * Const.from_letter(x, -d1)
    if d2 and not y.is_one:
        pref = pref * Const.from_letter(y, -d2)
    if binomial and s:
        out = out.times_factor(poles={i: 1 for i in range(1, s + 1)})
    return normalize_offsets(out.scale(pref))


def _with_poly(body, poly_poles):
    """Multiply a side by a polynomial in J and re-split into pole pieces at J = 0."""
    if not poly_poles:
        return _split_zero_poles(body), body
    body = canonicalize(body.times_factor(poles=poly_poles))
    return _split_zero_poles(body), body


def _split_zero_poles(body):
    out = []
    for t, c in body.terms.items():
        poles = dict(t.poles)
        if set(poles) - {0} or poles.get(0, 0) < 0:
            raise UnsupportedShapeError("binomial Appell summand leaves a polynomial factor; not reducible")
        w = t.sums[0].word if t.sums else ()
        out.append((c, t.letter, poles.get(0, 0), w, body))
    return out


def convolve_expressions(f: Expression, g: Expression, x, y, binomial=False) -> Expression:
    """``sum_{j=1}^{n-1} [C(n,j)] x^j f(j) y^(n-j) g(n-j)`` for eps-free expressions ``f``, ``g``."""
    x, y = Letter.coerce(x), Letter.coerce(y)
    f = normalize_offsets(canonicalize(f))
    g = normalize_offsets(canonicalize(g))
    out = Expression.zero()
    with _Budget():
        for t1, c1 in f.terms.items():
            for t2, c2 in g.terms.items():
                for a1, d1, e1, A in _pieces(t1):
                    for a2, d2, e2, B in _pieces(t2):
                        part = _piece_conv(d1, e1, A, x * t1.letter, d2, e2, B, y * t2.letter, binomial)
                        out = out + part.scale(c1 * c2 * a1 * a2)
    return out


def expand_double(spec, order: int) -> LaurentSeries:
    """Laurent series of ``F1``/``F2`` with both arguments nonzero."""
    from .special import HypergeometricSpec, expand_pFq

    f1 = spec.kind == "F1"
    c1, c2 = (spec.c[0], spec.c[0]) if f1 else spec.c
    edge1 = expand_pFq(HypergeometricSpec((spec.a, spec.b1), (c1,), spec.x1), order)
    edge2 = expand_pFq(HypergeometricSpec((spec.a, spec.b2), (c2,), spec.x2), order)
    result = edge1 + edge2 - LaurentSeries.constant(Expression.one(), order)

    if f1:
        outer = _factor_series((spec.a,), (c1,), False, order, "j")
        q1 = _factor_series((spec.b1,), (), True, order, "j")
        q2 = _factor_series((spec.b2,), (), True, order, "j")
    else:
        outer = _factor_series((spec.a,), (), True, order, "j")
        q1 = _factor_series((spec.b1,), (c1,), False, order, "j")
        q2 = _factor_series((spec.b2,), (c2,), False, order, "j")
    if outer is None or q1 is None or q2 is None:
        return result

    convs = {}
    for p, fq in q1.items():
        for r, gr in q2.items():
            if p + r <= order:
                conv = convolve_expressions(fq, gr, spec.x1, spec.x2, binomial=not f1)
                convs[p + r] = convs[p + r] + conv if p + r in convs else conv
    double = {}
    for k, pk in outer.items():
        for l, conv in convs.items():
            if k + l > order:
                continue
            summand = (pk.with_var("n") * conv).with_var("j")
            total = sum_range(summand, 2, "inf")
            double[k + l] = double[k + l] + total if k + l in double else total
    return result + LaurentSeries(double, order)


__all__ = ["expand_double", "convolve_expressions", "shift_var"]
