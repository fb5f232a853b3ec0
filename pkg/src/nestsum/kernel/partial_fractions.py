"""Exact partial fractioning of products of shifted linear factors.

Univariate products ``prod (j + c)^(-m_c)`` are split with Taylor expansion at
each pole.  Two pole families ``(j + c)`` and ``(n - j + d)`` are split with
the binomial identity for ``1/(u^e v^f)`` where ``u + v = n + c + d``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from ..errors import InputError


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for k, b in enumerate(q):
                out[i + k] += a * b
    return out


def poly_pow_linear(c, k):
    """Coefficients of ``(j + c)**k`` in ascending powers of j."""
    return [Fraction(comb(k, i)) * Fraction(c) ** (k - i) for i in range(k + 1)]


def poly_shift(p, s):
    """Coefficients of ``p(t + s)``."""
    out = [Fraction(0)] * len(p)
    for i, a in enumerate(p):
        if a:
            for k, b in enumerate(poly_pow_linear(s, i)):
                out[k] += a * b
    return out


def poly_divmod(num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    if len(num) < len(den):
        return [], num
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(quot) - 1, -1, -1):
        q = num[i + len(den) - 1] / lead
        quot[i] = q
        if q:
            for k, d in enumerate(den):
                num[i + k] -= q * d
    return quot, num[: len(den) - 1]


def _inverse_power_series(d, a, order):
    """Taylor coefficients of ``(t + d)^(-a)`` at t = 0 up to t^(order-1)."""
    d = Fraction(d)
    return [Fraction((-1) ** i * comb(a + i - 1, i)) * d ** (-a - i) for i in range(order)]


def _check_offsets(poles):
    for c in poles:
        if Fraction(c).denominator != 1:
            raise InputError(f"unsupported offset {c}: pole offsets must be integers")


def partial_fraction(poles):
    """Split ``prod_c (j + c)^(-m_c)`` (integer m_c, negative means numerator).

    Returns ``(poly, parts)`` with ``poly`` the ascending coefficients of the
    polynomial part and ``parts`` a dict ``{(c, e): coeff}`` for ``(j+c)^(-e)``.
    """
    _check_offsets(poles)
    numer = [Fraction(1)]
    denom_factors = {}
    for c, m in poles.items():
        if m < 0:
            numer = poly_mul(numer, poly_pow_linear(c, -m))
        elif m > 0:
            denom_factors[c] = m
    denom = [Fraction(1)]
    for c, m in denom_factors.items():
        denom = poly_mul(denom, poly_pow_linear(c, m))
    poly, _ = poly_divmod(numer, denom)
    while poly and poly[-1] == 0:
        poly.pop()
    parts = {}
    for c, a in denom_factors.items():
        # expand numer / prod_{other} around j = -c in t = j + c
        series = (poly_shift(numer, -c) + [Fraction(0)] * a)[:a]
        for c2, a2 in denom_factors.items():
            if c2 == c:
                continue
            series = poly_mul(series, _inverse_power_series(c2 - c, a2, a))[:a]
        for i, coeff in enumerate(series):
            if coeff:
                parts[(c, a - i)] = parts.get((c, a - i), 0) + coeff
    return poly, parts


def split_two_families(e, f):
    """``1/(u^e v^f)`` as ``sum coeff * s^(-r) * u^(-i)`` and ``... v^(-i)``, s = u + v.

    Returns a list of ``(coeff, r, family, i)`` with family ``'u'`` or ``'v'``.
    """
    out = []
    for i in range(1, e + 1):
        out.append((Fraction(comb(e + f - i - 1, f - 1)), e + f - i, "u", i))
    for i in range(1, f + 1):
        out.append((Fraction(comb(e + f - i - 1, e - 1)), e + f - i, "v", i))
    return out


def partial_fraction_two_families(j_poles, nj_poles):
    """Split ``prod (j+c)^(-a_c) * prod (n-j+d)^(-b_d)`` into single-family terms.

    Returns a list of ``(coeff, n_pole, family, offset, power)``: the term is
    ``coeff * (n + n_pole[0])^(-n_pole[1]) * F^(-power)`` with ``F = j + offset``
    for family ``'j'`` and ``F = n - j + offset`` for family ``'nj'``.
    ``n_pole`` is ``None`` when no n-dependent factor arises.
    """
    for table in (j_poles, nj_poles):
        if not isinstance(table, dict):
            raise InputError("not a two-family denominator: expected offset->power maps for j and n-j")
        _check_offsets(table)
        if any(m < 1 for m in table.values()):
            raise InputError("exponents must be positive")
    if not j_poles or not nj_poles:
        fam, table = ("j", j_poles) if j_poles else ("nj", nj_poles)
        _, parts = partial_fraction(table)
        return [(c, None, fam, off, e) for (off, e), c in sorted(parts.items())]
    _, jparts = partial_fraction(j_poles)
    _, nparts = partial_fraction(nj_poles)
    acc = {}
    for (c, e), cj in jparts.items():
        for (d, f), cn in nparts.items():
            for coeff, r, fam, i in split_two_families(e, f):
                key = ((c + d, r), "j" if fam == "u" else "nj", c if fam == "u" else d, i)
                acc[key] = acc.get(key, 0) + cj * cn * coeff
    return [(v, k[0], k[1], k[2], k[3]) for k, v in sorted(acc.items()) if v]
