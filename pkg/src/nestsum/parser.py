"""Recursive-descent parser for the expression language.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)*
    exponent:= ['-'] integer | '(' ['-'] integer ')' | index
    atom    := integer | 'eps' | constant | ssum | gamma | poch | hyper | appell
             | 'O' '(' 'eps' '^' integer ')' | symbol | index | '(' expr ')'
    ssum    := 'S' '(' bound ';' intlist ';' exprlist ')'
    bound   := 'inf' | integer | index [('+'|'-') integer]
    gamma   := 'Gamma' '(' expr ')'
    poch    := 'Poch' '(' expr ',' (integer | index) ')'
    hyper   := 'F' '(' integer ',' integer ';' exprlist ';' exprlist ';' expr ')'
    appell  := ('F1' | 'F2') '(' exprlist ';' exprlist ';' expr ',' expr ')'

Index names are ``n``, ``N``, ``m``, ``j`` and ``k``; one expression uses a
single index.  Constants: ``z2``, ``z3``, ... (zeta values), ``z5x3`` and
similar (strict multiple zeta values), ``ln2`` and ``gamma_E``.  Any other
identifier is a free symbol.  ``x^n`` with an index exponent is a letter
power.

Parsing yields a small tree; :func:`evaluate` turns it into a Laurent series
in eps, expanding Gamma functions, Pochhammer symbols and hypergeometric
functions to the requested order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ParseError, UnsupportedShapeError
from .gamma import GammaAtom, Pochhammer, gamma_ratio_expand, pochhammer_expand
from .kernel.constants import GAMMA_E, Const, MzvSymbol, Symbol, zeta
from .kernel.letters import Letter
from .kernel.series import LaurentSeries
from .ssum import Expression, SSum, Term, ssum_value

INDEX_NAMES = ("n", "N", "m", "j", "k")
RESERVED = {"eps", "inf", "S", "Gamma", "Poch", "F", "F1", "F2", "O", "gamma_E", "ln2"}
_ZETA = re.compile(r"z(\d+)((?:x\d+)*)$")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        # account for skipped whitespace and newlines
        for i in range(pos, m.start(m.lastindex) if m.lastindex else m.end()):
            if text[i] == "\n":
                line += 1
                line_start = i + 1
        if m.lastindex is None:
            pos = m.end()
            continue
        start = m.start(m.lastindex)
        col = start - line_start + 1
        if m.group(1):
            tokens.append(Token("int", m.group(1), line, col))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch == "−":
                ch = "-"
            if ch not in "()+-*/^,;":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token("op", ch, line, col))
        pos = m.end()
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree


class Node:
    pos = (1, 1)

    def valuation(self) -> int:
        return 0


@dataclass
class Num(Node):
    value: Fraction


@dataclass
class ConstNode(Node):
    value: Const


@dataclass
class SymNode(Node):
    name: str


@dataclass
class EpsNode(Node):
    def valuation(self):
        return 1


@dataclass
class IndexNode(Node):
    name: str


@dataclass
class SSumNode(Node):
    bound: object  # ('inf',) | ('int', k) | ('index', name, offset)
    weights: tuple
    letters: tuple


@dataclass
class GammaNode(Node):
    arg: Node


@dataclass
class PochNode(Node):
    base: Node
    length: object


@dataclass
class HyperNode(Node):
    p: int
    q: int
    upper: tuple
    lower: tuple
    x: Node


@dataclass
class AppellNode(Node):
    kind: str
    upper: tuple
    lower: tuple
    x1: Node
    x2: Node


@dataclass
class OrderNode(Node):
    power: int


@dataclass
class Add(Node):
    parts: list  # [(sign, node)]

    def valuation(self):
        vals = [n.valuation() for _, n in self.parts if not isinstance(n, OrderNode)]
        return min(vals) if vals else 0


@dataclass
class Mul(Node):
    factors: list  # [(node, exponent)] exponent int or ('index', name)

    def valuation(self):
        total = 0
        for node, e in self.factors:
            if isinstance(e, int):
                total += node.valuation() * e
        return total


# ---------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.index = None

    # helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def use_index(self, name, tok):
        if self.index is None:
            self.index = name
        elif self.index != name:
            raise self.error(f"mixed index variables {self.index!r} and {name!r}", tok)

    def integer(self, signed=False) -> int:
        neg = signed and self.accept("-")
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    # grammar
    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        parts = []
        sign = 1
        if self.accept("-"):
            sign = -1
        elif self.accept("+"):
            pass
        parts.append((sign, self.term()))
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            parts.append((sign, self.term()))
        if len(parts) == 1 and parts[0][0] == 1:
            return parts[0][1]
        return Add(parts)

    def term(self) -> Node:
        factors = self.power_factors()
        while self.tok.kind == "op" and self.tok.text in "*/":
            div = self.tok.text == "/"
            self.i += 1
            for node, e in self.power_factors():
                if div:
                    if not isinstance(e, int):
                        raise self.error("cannot divide by a letter power")
                    e = -e
                factors.append((node, e))
        if len(factors) == 1 and factors[0][1] == 1:
            return factors[0][0]
        return Mul(factors)

    def power_factors(self) -> list:
        if self.accept("-"):
            return [(Num(Fraction(-1)), 1)] + self.power_factors()
        base = self.atom()
        exps = []
        while self.accept("^"):
            tok = self.tok
            if tok.kind == "name" and tok.text in INDEX_NAMES:
                self.use_index(tok.text, tok)
                self.i += 1
                exps.append(("index", tok.text))
            elif self.accept("("):
                exps.append(self.integer(signed=True))
                self.expect(")")
            else:
                exps.append(self.integer(signed=True))
        if not exps:
            return [(base, 1)]
        if any(not isinstance(e, int) for e in exps):
            if len(exps) != 1:
                raise self.error("a letter power cannot be raised further")
            return [(base, exps[0])]
        total = 1
        for e in exps:
            total *= e
        return [(base, total)]

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "name":
            raise self.error(f"unexpected {tok.text or 'end of input'!r}")
        name = tok.text
        self.i += 1
        if name == "eps":
            return EpsNode()
        if name == "gamma_E":
            return ConstNode(GAMMA_E)
        if name == "ln2":
            return ConstNode(Const.atom(MzvSymbol((1,), (Letter(Fraction(1, 2)),))))
        m = _ZETA.match(name)
        if m:
            return ConstNode(_zeta_alias(m, tok, self))
        if name == "S" and self.tok.text == "(":
            return self.ssum(tok)
        if name == "Gamma" and self.tok.text == "(":
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return GammaNode(arg)
        if name == "Poch" and self.tok.text == "(":
            return self.poch()
        if name == "F" and self.tok.text == "(":
            return self.hyper(tok)
        if name in ("F1", "F2") and self.tok.text == "(":
            return self.appell(name, tok)
        if name == "O" and self.tok.text == "(":
            self.expect("(")
            if not (self.tok.kind == "name" and self.tok.text == "eps"):
                raise self.error("expected eps in O(...)")
            self.i += 1
            power = 1
            if self.accept("^"):
                power = self.integer(signed=True) if self.tok.text != "(" else self._paren_int()
            self.expect(")")
            return OrderNode(power)
        if name in RESERVED:
            raise self.error(f"{name!r} must be followed by '('", tok)
        if name in INDEX_NAMES:
            self.use_index(name, tok)
            return IndexNode(name)
        return SymNode(name)

    def _paren_int(self):
        self.expect("(")
        v = self.integer(signed=True)
        self.expect(")")
        return v

    def ssum(self, start) -> Node:
        self.expect("(")
        tok = self.tok
        if tok.kind == "name" and tok.text == "inf":
            self.i += 1
            bound = ("inf",)
        elif tok.kind == "name" and tok.text in INDEX_NAMES:
            self.use_index(tok.text, tok)
            self.i += 1
            off = 0
            if self.tok.text in ("+", "-"):
                neg = self.tok.text == "-"
                self.i += 1
                off = self.integer()
                off = -off if neg else off
            bound = ("index", tok.text, off)
        elif tok.kind == "int" or tok.text == "-":
            bound = ("int", self.integer(signed=True))
        else:
            raise self.error("expected a summation bound (index, integer or inf)")
        self.expect(";")
        weights = [self.integer()]
        while self.accept(","):
            weights.append(self.integer())
        self.expect(";")
        letters = [self.expr()]
        while self.accept(","):
            letters.append(self.expr())
        self.expect(")")
        if len(weights) != len(letters):
            raise ParseError("weights/letters length mismatch", start.line, start.column)
        if any(w < 1 for w in weights):
            raise ParseError("weights must be positive integers", start.line, start.column)
        return SSumNode(bound, tuple(weights), tuple(letters))

    def poch(self) -> Node:
        self.expect("(")
        base = self.expr()
        self.expect(",")
        tok = self.tok
        if tok.kind == "name" and tok.text in INDEX_NAMES:
            self.use_index(tok.text, tok)
            self.i += 1
            length = tok.text
        else:
            length = self.integer()
        self.expect(")")
        return PochNode(base, length)

    def exprlist(self):
        items = [self.expr()]
        while self.accept(","):
            items.append(self.expr())
        return tuple(items)

    def hyper(self, start) -> Node:
        self.expect("(")
        p = self.integer()
        self.expect(",")
        q = self.integer()
        self.expect(";")
        upper = self.exprlist()
        self.expect(";")
        lower = self.exprlist()
        self.expect(";")
        x = self.expr()
        self.expect(")")
        if len(upper) != p or len(lower) != q:
            raise ParseError(f"F({p},{q}) needs {p} upper and {q} lower parameters", start.line, start.column)
        return HyperNode(p, q, upper, lower, x)

    def appell(self, kind, start) -> Node:
        self.expect("(")
        upper = self.exprlist()
        self.expect(";")
        lower = self.exprlist()
        self.expect(";")
        x1 = self.expr()
        self.expect(",")
        x2 = self.expr()
        self.expect(")")
        if len(upper) != 3 or len(lower) != (1 if kind == "F1" else 2):
            raise ParseError(f"{kind} needs parameters (a,b1,b2; {'c' if kind == 'F1' else 'c1,c2'})",
                             start.line, start.column)
        return AppellNode(kind, upper, lower, x1, x2)


def _zeta_alias(m, tok, parser) -> Const:
    from .zeta import strict_mzv

    first = int(m.group(1))
    rest = [int(v) for v in m.group(2).split("x")[1:]] if m.group(2) else []
    weights = [first] + rest
    if any(w < 1 for w in weights) or weights[0] < 2:
        raise parser.error(f"{m.group(0)!r} is not a convergent zeta value", tok)
    if not rest:
        return Const.atom(zeta(first))
    return strict_mzv(tuple(weights))


@dataclass
class Parsed:
    """Result of :func:`parse`: the tree and the index variable in use."""

    tree: Node
    index: str | None
    text: str

    @property
    def var(self) -> str:
        return self.index or "n"

    def uses_eps(self) -> bool:
        return _uses_eps(self.tree)


def parse(text: str) -> Parsed:
    p = Parser(text)
    tree = p.parse()
    return Parsed(tree, p.index, text)


def _uses_eps(node) -> bool:
    if isinstance(node, (EpsNode, OrderNode, HyperNode, AppellNode, PochNode)):
        return True
    if isinstance(node, GammaNode):
        return _uses_eps(node.arg)
    if isinstance(node, Add):
        return any(_uses_eps(n) for _, n in node.parts)
    if isinstance(node, Mul):
        return any(_uses_eps(n) for n, _ in node.factors)
    return False


# ---------------------------------------------------------------------------
# evaluation


class Evaluator:
    def __init__(self, var: str, extract_poles: bool = False):
        self.var = var
        self.extract_poles = extract_poles

    def series(self, node, order: int) -> LaurentSeries:
        return getattr(self, "_" + type(node).__name__)(node, order)

    # helpers
    def const_of(self, node) -> Const:
        s = self.series(node, 0)
        if s.valuation < 0 or any(k != 0 for k, _ in s.items()):
            raise InputError("expected a constant without eps")
        e = s.coefficient(0, Expression.zero(self.var))
        if not e.is_constant():
            raise InputError(f"expected a constant, got an expression in {self.var}")
        return e.constant_value()

    def letter_of(self, node) -> Letter:
        return const_to_letter(self.const_of(node))

    def linear(self, node):
        """``(c0, c1, c2)`` of ``c0 + c1*index + c2*eps``."""
        s = self.series(node, 1)
        if s.valuation < 0 or any(k > 1 for k, _ in s.items()):
            raise InputError("Gamma/Pochhammer argument must be linear in eps")
        e0 = s.coefficient(0, Expression.zero(self.var))
        c0, c1 = Fraction(0), 0
        for t, c in e0.terms.items():
            if not c.is_rational():
                raise InputError("index part of an argument must be rational")
            if t == Term():
                c0 = c.rational_value()
            elif t == Term(poles=((0, -1),)) and c.rational_value() == 1:
                c1 = 1
            else:
                raise InputError("argument must be c0 + index + c*eps with integer c0")
        c2 = s.coefficient(1, Expression.zero(self.var))
        if not c2.is_constant():
            raise InputError("eps coefficient of an argument must be constant")
        return c0, c1, c2.constant_value()

    def const_series(self, c: Const, order: int) -> LaurentSeries:
        return LaurentSeries.constant(Expression.const(c, self.var), order)

    # node handlers
    def _Num(self, node, order):
        return self.const_series(Const.rational(node.value), order)

    def _ConstNode(self, node, order):
        return self.const_series(node.value, order)

    def _SymNode(self, node, order):
        return self.const_series(Const.atom(Symbol(node.name)), order)

    def _EpsNode(self, node, order):
        return LaurentSeries({1: Expression.one(self.var)}, order)

    def _OrderNode(self, node, order):
        return LaurentSeries({}, node.power - 1)

    def _IndexNode(self, node, order):
        return LaurentSeries.constant(Expression.monomial(1, poles={0: -1}, var=self.var), order)

    def _SSumNode(self, node, order):
        letters = tuple(self.letter_of(x) for x in node.letters)
        kind = node.bound[0]
        if kind == "inf":
            from .zeta import check_convergent

            sym = MzvSymbol(node.weights, letters)
            check_convergent(sym)
            return self.const_series(Const.atom(sym), order)
        if kind == "int":
            v = ssum_value(node.weights, letters, node.bound[1])
            return self.const_series(v if isinstance(v, Const) else Const.rational(v), order)
        s = SSum(node.bound[2], node.weights, letters)
        return LaurentSeries.constant(Expression.monomial(sums=(s,), var=self.var), order)

    def _GammaNode(self, node, order):
        return self._Mul(Mul([(node, 1)]), order)

    def _PochNode(self, node, order):
        c0, c1, c2 = self.linear(node.base)
        if c1:
            raise InputError("Pochhammer base must not contain the index")
        if c0.denominator != 1:
            raise UnsupportedShapeError("half-integer Pochhammer base is not supported")
        if c0 < 1:
            raise InputError(f"unnormalized base {c0}: integer part of a Pochhammer base must be positive")
        return pochhammer_expand(Pochhammer(c2, node.length, int(c0)), order, self.var if isinstance(node.length, str) else None
                                 ).map(lambda e: e.with_var(self.var))

    def _param(self, node):
        from .special import Param

        c0, c1, c2 = self.linear(node)
        if c1:
            raise InputError("hypergeometric parameters must not contain the index")
        return Param(c0, c2)

    def _HyperNode(self, node, order):
        from .special import HypergeometricSpec, expand_pFq

        x = self.const_of(node.x)
        spec = HypergeometricSpec(tuple(self._param(a) for a in node.upper),
                                  tuple(self._param(b) for b in node.lower),
                                  0 if x.is_zero() else const_to_letter(x))
        return expand_pFq(spec, order).map(lambda e: e.with_var(self.var))

    def _AppellNode(self, node, order):
        from .special import AppellSpec, expand_appell

        a, b1, b2 = (self._param(v) for v in node.upper)
        c = [self._param(v) for v in node.lower]
        xs = []
        for xn in (node.x1, node.x2):
            x = self.const_of(xn)
            xs.append(0 if x.is_zero() else const_to_letter(x))
        spec = AppellSpec(node.kind, a, b1, b2, c, xs[0], xs[1])
        return expand_appell(spec, order).map(lambda e: e.with_var(self.var))

    def _Add(self, node, order):
        trunc = order
        for _, n in node.parts:
            if isinstance(n, OrderNode):
                trunc = min(trunc, n.power - 1)
        out = LaurentSeries({}, trunc)
        for sign, n in node.parts:
            if isinstance(n, OrderNode):
                continue
            s = self.series(n, trunc)
            out = out + (s if sign > 0 else -s)
        return out

    def _Mul(self, node, order):
        atoms = []
        plain = []
        for n, e in node.factors:
            if isinstance(n, GammaNode):
                if not isinstance(e, int):
                    raise InputError("Gamma functions cannot carry an index exponent")
                c0, c1, c2 = self.linear(n.arg)
                atoms.append(GammaAtom(c0, c1, c2, e))
            else:
                plain.append((n, e))
        vals = [n.valuation() * e if isinstance(e, int) else 0 for n, e in plain]
        total = sum(vals)
        out = None
        if atoms:
            out = gamma_ratio_expand(atoms, order - total, self.var, self.extract_poles)
            # extracted poles lower the valuation of the Gamma block
            total += min(out.valuation, 0) if not out.is_zero() else 0
        for (n, e), v in zip(plain, vals):
            need = order - (total - v)
            if isinstance(e, tuple):
                f = LaurentSeries.constant(self.letter_power(n), need)
            elif e >= 0:
                unit = n.valuation()
                f = _series_pow(self.series(n, need - (e - 1) * unit), e, need, self.var)
            else:
                f = self.inverse(n, -e, need)
            out = f if out is None else out * f
        if out is None:
            out = LaurentSeries.constant(Expression.one(self.var), order)
        return out if out.truncation <= order else out.truncate(order)

    def letter_power(self, node) -> Expression:
        return Expression.monomial(1, self.letter_of(node), var=self.var)

    def inverse(self, node, k: int, order: int) -> LaurentSeries:
        """``node^(-k)`` for a node that is a single power of eps times an invertible expression."""
        if not _eps_monomial(node):
            raise UnsupportedShapeError("division is only supported by eps-free factors and powers of eps")
        if isinstance(node, Mul):
            out = None
            for n, e in node.factors:
                f = self.inverse(n, e * k, order) if e > 0 else _series_pow(self.series(n, order), -e * k, order, self.var)
                out = f if out is None else out * f
            return out
        s = self.series(node, node.valuation())
        items = list(s.items())
        if not items:
            raise InputError("division by zero")
        (p, e), = items
        inv = _invert_expression(e)
        return LaurentSeries({-p * k: inv ** k}, order)


def _eps_monomial(node) -> bool:
    if isinstance(node, EpsNode) or not _uses_eps(node):
        return True
    if isinstance(node, Mul):
        return all(isinstance(e, int) and _eps_monomial(n) for n, e in node.factors)
    return False


def _series_pow(base: LaurentSeries, e: int, order: int, var: str) -> LaurentSeries:
    out = LaurentSeries.constant(Expression.one(var), order)
    for _ in range(e):
        out = out * base
    return out


def _invert_expression(e: Expression) -> Expression:
    """Inverse of a monomial, or of ``c*(var + a)`` with integer ``a``."""
    terms = list(e.terms.items())
    if len(terms) == 1:
        t, c = terms[0]
        if t.sums:
            raise UnsupportedShapeError("cannot divide by an S-sum")
        if len(c.terms) != 1:
            raise UnsupportedShapeError(f"cannot divide by {c}")
        return Expression.monomial(c ** -1, t.letter.inverse(), {o: -m for o, m in t.poles}, -t.fact, var=e.var)
    if len(terms) == 2:
        d = dict(terms)
        lin, const = d.get(Term(poles=((0, -1),))), d.get(Term())
        if lin is not None and const is not None and lin.is_rational() and const.is_rational():
            a = const.rational_value() / lin.rational_value()
            if a.denominator == 1:
                return Expression.monomial(lin ** -1, poles={int(a): 1}, var=e.var)
    return _invert_polynomial(e)


def _invert_polynomial(e: Expression) -> Expression:
    """Inverse of a polynomial in the index that splits into factors ``var + integer``."""
    import sympy

    v = sympy.Symbol("v")
    poly = 0
    for t, c in e.terms.items():
        if t.sums or t.fact or not t.letter.is_one or not c.is_rational() or any(
                off != 0 or m > 0 for off, m in t.poles):
            raise UnsupportedShapeError("division is only supported by monomials and polynomials in the index")
        r = c.rational_value()
        poly += sympy.Rational(r.numerator, r.denominator) * v ** (-t.pole_order)
    content, factors = sympy.factor_list(poly, v)
    poles = {}
    scale = Fraction(int(sympy.numer(content)), int(sympy.denom(content)))
    for f, k in factors:
        fp = sympy.Poly(f, v)
        if fp.degree() != 1:
            raise UnsupportedShapeError(f"cannot divide by {f}: not a product of linear factors")
        a, b = (Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in fp.all_coeffs())
        if (b / a).denominator != 1:
            raise UnsupportedShapeError(f"cannot divide by {f}: root is not an integer")
        scale *= a ** k
        poles[int(b / a)] = poles.get(int(b / a), 0) + k
    return Expression.monomial(1 / scale, poles=poles, var=e.var)


def const_to_letter(c: Const) -> Letter:
    """A constant monomial in free symbols as a letter."""
    if len(c.terms) != 1:
        raise InputError(f"letter {c} must be a single monomial")
    (mono, coeff), = c.terms.items()
    syms = []
    for atom, power in mono:
        if not isinstance(atom, Symbol):
            raise InputError(f"letter {c} may only contain rationals and free symbols")
        syms.append((atom.name, power))
    return Letter(coeff, tuple(syms))


def evaluate(parsed: Parsed, order: int = 0, extract_poles: bool = False) -> LaurentSeries:
    """Laurent series of a parsed expression through ``eps^order``.

    ``extract_poles`` lets Gamma functions with a pole at eps = 0 (such as
    ``Gamma(eps)``) split off their ``1/eps`` factors instead of raising.
    """
    return Evaluator(parsed.var, extract_poles).series(parsed.tree, order)


def parse_expression(text: str) -> Expression:
    """Parse eps-free text into an :class:`Expression`."""
    parsed = parse(text)
    if parsed.uses_eps():
        raise InputError("expression contains eps; use parse_series")
    s = evaluate(parsed, 0)
    return s.coefficient(0, Expression.zero(parsed.var))


def parse_series(text: str, order: int, extract_poles: bool = False) -> LaurentSeries:
    return evaluate(parse(text), order, extract_poles)


__all__ = ["parse", "Parsed", "evaluate", "parse_expression", "parse_series", "tokenize", "const_to_letter",
           "INDEX_NAMES"]
