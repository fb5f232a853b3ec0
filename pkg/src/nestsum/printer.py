"""Deterministic text rendering of constants, expressions and series.

Named constants print with short aliases (``z2``, ``ln2``, ``gamma_E``) unless
``raw=True`` is given, in which case every polylogarithm prints as
``S(inf;...)``.  The output is accepted back by :mod:`nestsum.parser`.
"""

from __future__ import annotations

from fractions import Fraction

from .kernel.constants import EulerGamma, MzvSymbol, Symbol
from .kernel.letters import Letter


def atom_name(atom, raw=False) -> str:
    if isinstance(atom, EulerGamma):
        return "gamma_E"
    if isinstance(atom, Symbol):
        return atom.name
    if isinstance(atom, MzvSymbol):
        if not raw and atom.depth == 1:
            (m,), (x,) = atom.weights, atom.letters
            if x.is_one and m >= 2:
                return f"z{m}"
            if m == 1 and x == Letter(Fraction(1, 2)):
                return "ln2"
        return format_mzv(atom)
    raise TypeError(atom)


def format_mzv(atom: MzvSymbol) -> str:
    w = ",".join(str(m) for m in atom.weights)
    x = ",".join(format_letter(y) for y in atom.letters)
    return f"S(inf;{w};{x})"


def format_letter(x: Letter) -> str:
    return str(x)


def _format_monomial(mono, raw):
    parts = []
    for atom, power in mono:
        name = atom_name(atom, raw)
        parts.append(name if power == 1 else f"{name}^{power}")
    return "*".join(parts)


def _signed_pieces(const, raw):
    """Yield ``(negative, magnitude_text)`` per monomial, magnitude without sign."""
    for mono, c in const.sorted_items():
        neg = c < 0
        mag = -c if neg else c
        body = _format_monomial(mono, raw)
        if not body:
            yield neg, str(mag)
        elif mag == 1:
            yield neg, body
        else:
            yield neg, f"{mag}*{body}"


def _join(pieces):
    out = ""
    for i, (neg, text) in enumerate(pieces):
        if i == 0:
            out = ("-" if neg else "") + text
        else:
            out += (" - " if neg else " + ") + text
    return out or "0"


def format_const(const, raw=False) -> str:
    return _join(list(_signed_pieces(const, raw)))


def _linear(var, offset):
    if offset == 0:
        return var
    return f"{var}{offset:+d}"


def format_term_factors(term, var) -> list:
    parts = []
    if not term.letter.is_one:
        x = term.letter
        text = str(x)
        if x.is_rational and x.coeff.denominator == 1 and x.coeff > 0:
            parts.append(f"{text}^{var}")
        elif not x.is_rational and x.coeff == 1 and len(x.syms) == 1 and x.syms[0][1] == 1:
            parts.append(f"{text}^{var}")
        else:
            parts.append(f"({text})^{var}")
    for off, m in term.poles:
        base = var if off == 0 else f"({_linear(var, off)})"
        parts.append(base if m == -1 else f"{base}^{-m}")
    if term.fact:
        g = f"Gamma({var}+1)"
        parts.append(g if term.fact == 1 else f"{g}^{term.fact}")
    for s in term.sums:
        w = ",".join(str(m) for m in s.weights)
        x = ",".join(format_letter(y) for y in s.letters)
        parts.append(f"S({_linear(var, s.offset)};{w};{x})")
    return parts


def format_expression(expr, raw=False) -> str:
    pieces = []
    for term, coeff in expr.items():
        factors = format_term_factors(term, expr.var)
        const_pieces = list(_signed_pieces(coeff, raw))
        if not factors:
            pieces.extend(const_pieces)
            continue
        body = "*".join(factors)
        if len(const_pieces) == 1:
            neg, mag = const_pieces[0]
            pieces.append((neg, body if mag == "1" else f"{mag}*{body}"))
        else:
            pieces.append((False, f"({_join(const_pieces)})*{body}"))
    return _join(pieces)


def format_series(series, raw=False, eps="eps") -> str:
    parts = []
    for k, coeff in series.items():
        if coeff.is_zero():
            continue
        text = format_expression(coeff, raw)
        if k == 0:
            parts.append(f"({text})")
        else:
            parts.append(f"({text})*{eps}^{k}")
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O({eps}^{series.truncation + 1})"
