"""Command line front end: ``nestsum <command> [options] EXPR...``.

Exit codes: 0 on success, 1 for malformed input, 2 for input outside the
class of shapes the algorithms handle (including divergences).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .errors import InputError, NestsumError, UnsupportedShapeError
from .kernel.constants import Const
from .kernel.letters import as_fraction
from .kernel.numeric import const_numeric
from .kernel.series import LaurentSeries
from .parser import evaluate, parse
from .printer import format_const, format_expression, format_series, format_term_factors
from .ssum import Expression, evaluate_exact

SCHEMA = "nestsum/1"

COMMANDS = (
    "canonicalize", "product", "convolve", "conjugate", "binomial-convolve", "gamma-expand",
    "pochhammer-expand", "pfq-expand", "appell-expand", "solve-recurrence", "eval", "zeta",
)
_ARITY = {"product": None, "convolve": 2, "binomial-convolve": 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nestsum", description="Nested sums: canonical forms, reductions and eps-expansions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("expr", nargs="+", help="expression text, or '-' to read standard input")
    p.add_argument("--order", type=int, default=0, help="highest eps power kept in expansions")
    p.add_argument("--precision", type=int, default=16, help="significant digits of numeric output (4..30)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--raw", action="store_true", help="print constants as S(inf;...) instead of aliases")
    p.add_argument("--extract-poles", action="store_true",
                   help="let Gamma functions singular at eps = 0 contribute explicit 1/eps poles")
    p.add_argument("--n", type=int, default=None, help="value of the index for eval")
    p.add_argument("--bind", action="append", default=[], metavar="NAME=VALUE",
                   help="bind a free symbol (or eps) to a rational for eval")
    p.add_argument("--version", action="version", version=f"nestsum {__version__}")
    return p


# ---------------------------------------------------------------------------
# rendering


def _term_json(term, coeff, var, raw):
    from .ssum import Term

    return {
        "coeff": format_const(coeff, raw),
        "sums": format_term_factors(Term(sums=term.sums), var),
        "poles": [{"offset": off, "weight": m} for off, m in term.poles],
        "powers": format_term_factors(Term(letter=term.letter, fact=term.fact), var),
    }


def _expr_json(expr: Expression, raw):
    return [_term_json(t, c, expr.var, raw) for t, c in expr.items()]


class Result:
    """Output of one command: an expression, a series or a numeric value."""

    def __init__(self, value, series_form=False, warnings=None, extra=None):
        self.value = value
        self.series_form = series_form
        self.warnings = list(warnings or [])
        self.extra = dict(extra or {})

    def text(self, raw) -> str:
        v = self.value
        if isinstance(v, LaurentSeries):
            if not self.series_form:
                return format_expression(v.coefficient(0, Expression.zero()), raw)
            return format_series(v, raw)
        if isinstance(v, Expression):
            return format_expression(v, raw)
        if isinstance(v, dict):
            return "\n".join(f"eps^{k}: {_num_text(x)}" for k, x in sorted(v.items()))
        return _num_text(v)

    def json(self, command, order, raw) -> dict:
        out = {"schema": SCHEMA, "command": command, "order": order}
        v = self.value
        if isinstance(v, LaurentSeries):
            if not self.series_form:
                v = v.coefficient(0, Expression.zero())
                out["series"] = [{"eps_power": 0, "terms": _expr_json(v, raw)}]
            else:
                out["series"] = [{"eps_power": k, "terms": _expr_json(c, raw)} for k, c in v.items()]
                out["truncation"] = v.truncation
        elif isinstance(v, Expression):
            out["series"] = [{"eps_power": 0, "terms": _expr_json(v, raw)}]
        elif isinstance(v, dict):
            out["values"] = {str(k): _num_text(x) for k, x in sorted(v.items())}
        else:
            out["value"] = _num_text(v)
        out["text"] = self.text(raw)
        out.update(self.extra)
        out["warnings"] = self.warnings
        return out


def _num_text(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Const):
        return format_const(x)
    return mpmath.nstr(x, _DIGITS[0], strip_zeros=False) if isinstance(x, mpmath.mpf) else str(x)


_DIGITS = [16]


# ---------------------------------------------------------------------------
# commands


def _series(text, order, args=None):
    parsed = parse(text)
    return evaluate(parsed, order, bool(args and args.extract_poles)), parsed


def _check_truncation(series, order, warnings):
    if series.truncation < order:
        warnings.append(f"result known only through eps^{series.truncation}")


def cmd_canonicalize(texts, args):
    (text,) = texts
    s, parsed = _series(text, args.order, args)
    warnings = []
    if parsed.uses_eps():
        _check_truncation(s, args.order, warnings)
    return Result(s, parsed.uses_eps(), warnings)


def cmd_product(texts, args):
    out, uses_eps, warnings = None, False, []
    for text in texts:
        s, parsed = _series(text, args.order, args)
        uses_eps = uses_eps or parsed.uses_eps()
        out = s if out is None else out * s
    if uses_eps:
        _check_truncation(out, args.order, warnings)
    return Result(out, uses_eps, warnings)


def _factor_shapes(text, what):
    """Split an eps-free expression in ``j`` into ``(coeff, m, letter, (weights, letters))`` terms."""
    parsed = parse(text)
    if parsed.uses_eps():
        raise InputError(f"{what} must not contain eps")
    if parsed.index not in (None, "j"):
        raise InputError(f"{what} must be written in the summation index j")
    expr = evaluate(parsed, 0).coefficient(0, Expression.zero("j"))
    shapes = []
    for t, c in expr.items():
        if t.fact or len(t.sums) > 1 or any(off != 0 for off, _ in t.poles):
            raise UnsupportedShapeError(f"{what}: each term must read c * x^j / j^m * S(j;...)")
        m = dict(t.poles).get(0, 0)
        if m < 1:
            raise UnsupportedShapeError(f"{what}: the outer weight m must be a positive integer")
        inner = ((), ())
        if t.sums:
            (s,) = t.sums
            if s.offset != 0:
                raise UnsupportedShapeError(f"{what}: inner sums must have upper bound j")
            inner = (s.weights, s.letters)
        shapes.append((c, m, t.letter, inner))
    if not shapes:
        raise InputError(f"{what} is zero")
    return shapes


def _bilinear(texts, fn):
    f = _factor_shapes(texts[0], "first factor")
    g = _factor_shapes(texts[1], "second factor")
    out = Expression.zero()
    for c1, m1, x1, a in f:
        for c2, m2, x2, b in g:
            out = out + fn(m1, a, x1, m2, b, x2).scale(c1 * c2)
    return Result(out)


def cmd_convolve(texts, args):
    from .telescoper import convolve

    return _bilinear(texts, convolve)


def cmd_binomial_convolve(texts, args):
    from .telescoper import binomial_convolve

    return _bilinear(texts, binomial_convolve)


def cmd_conjugate(texts, args):
    from .telescoper import conjugate

    (text,) = texts
    out = Expression.zero()
    for c, m, x, inner in _factor_shapes(text, "summand"):
        out = out + conjugate(m, inner, x).scale(c)
    return Result(out)


def _expansion(texts, args, kinds):
    from .parser import AppellNode, GammaNode, HyperNode, PochNode

    (text,) = texts
    parsed = parse(text)
    wanted = {"gamma": GammaNode, "poch": PochNode, "hyper": HyperNode, "appell": AppellNode}[kinds]
    if not _contains(parsed.tree, wanted):
        raise InputError(f"input contains no {kinds} construct")
    s = evaluate(parsed, args.order, args.extract_poles)
    warnings = []
    _check_truncation(s, args.order, warnings)
    return Result(s, True, warnings)


def _contains(node, cls) -> bool:
    if isinstance(node, cls):
        return True
    for value in vars(node).values():
        items = value if isinstance(value, (list, tuple)) else [value]
        for item in items:
            if isinstance(item, tuple):
                item = item[1] if len(item) == 2 and isinstance(item[0], int) else item[0]
            if hasattr(item, "__dict__") and _contains(item, cls):
                return True
    return False


def cmd_gamma_expand(texts, args):
    return _expansion(texts, args, "gamma")


def cmd_pochhammer_expand(texts, args):
    return _expansion(texts, args, "poch")


def cmd_pfq_expand(texts, args):
    return _expansion(texts, args, "hyper")


def cmd_appell_expand(texts, args):
    return _expansion(texts, args, "appell")


def parse_recurrence(text: str, order: int):
    """``a0=...; a1=...; G=...; I(0)=...`` into a :class:`DifferenceEquation`."""
    from .diffeq import DifferenceEquation

    coeffs, boundary, g = {}, {}, "0"
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise InputError(f"expected key=value in recurrence spec, got {part.strip()!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        if key.startswith("a") and key[1:].isdigit():
            coeffs[int(key[1:])] = value
        elif key == "G":
            g = value
        elif key.startswith("I(") and key.endswith(")") and key[2:-1].isdigit():
            boundary[int(key[2:-1])] = value
        else:
            raise InputError(f"unknown key {key!r} in recurrence spec")
    m = max(coeffs) if coeffs else -1
    if sorted(coeffs) != list(range(m + 1)) or m < 1:
        raise InputError("recurrence needs coefficients a0, a1, ... without gaps")
    if sorted(boundary) != list(range(m)):
        raise InputError(f"recurrence of order {m} needs boundary values I(0)..I({m - 1})")
    parsed = parse(g)
    if parsed.index not in (None, "N"):
        raise InputError("the inhomogeneity must be written in N")
    gs = evaluate(parsed, order).map(lambda e: e.with_var("N"))
    bs = [evaluate(parse(boundary[i]), order).map(lambda e: e.with_var("N")) for i in range(m)]
    return DifferenceEquation([coeffs[i] for i in range(m + 1)], gs, bs)


def cmd_solve_recurrence(texts, args):
    from .diffeq import solve_first_order

    (text,) = texts
    eq = parse_recurrence(text, args.order)
    sol = solve_first_order(eq, args.order)
    return Result(sol.closed_form, True)


def _bindings(args):
    out = {}
    for b in args.bind:
        if "=" not in b:
            raise InputError(f"--bind expects NAME=VALUE, got {b!r}")
        k, v = b.split("=", 1)
        try:
            out[k.strip()] = as_fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--bind value {v!r} is not a rational") from exc
    return out


def _numeric(c: Const, digits):
    return const_numeric(c, digits)


def cmd_eval(texts, args):
    (text,) = texts
    s, parsed = _series(text, args.order, args)
    bindings = _bindings(args)
    eps = bindings.pop("eps", None)
    n = args.n
    if parsed.index is not None and n is None and parsed.index not in bindings:
        raise InputError(f"unbound index {parsed.index}; pass --n")
    if n is None and parsed.index in bindings:
        n = int(bindings.pop(parsed.index))
    values = {}
    for k, e in s.items():
        c = evaluate_exact(e, n, bindings)
        values[k] = _numeric(c, args.precision)
    if not parsed.uses_eps():
        return Result(values.get(0, Fraction(0)))
    if eps is None:
        return Result(values)
    if all(isinstance(v, Fraction) for v in values.values()):
        return Result(sum((v * eps ** k for k, v in values.items()), Fraction(0)))
    with mpmath.workdps(args.precision + 10):
        e = mpmath.mpf(eps.numerator) / eps.denominator
        return Result(+sum((v * e ** k for k, v in values.items()), mpmath.mpf(0)))


def cmd_zeta(texts, args):
    (text,) = texts
    s, parsed = _series(text, 0)
    if parsed.uses_eps() or parsed.index is not None:
        raise InputError("zeta expects a constant expression")
    c = s.coefficient(0, Expression.zero()).constant_value()
    value = _numeric(c.substitute(_bindings(args)), args.precision)
    return Result(value, extra={"symbolic": format_const(c, args.raw)})


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# ---------------------------------------------------------------------------
# driver


def _inputs(exprs, command):
    """Expand '-' into stdin lines; returns a list of argument tuples (one per job)."""
    arity = _ARITY.get(command, 1)
    if exprs == ["-"]:
        lines = [ln.strip() for ln in sys.stdin.read().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if arity is None:
            return [lines]
        if arity == 1:
            return [[ln] for ln in lines]
        if len(lines) % arity:
            raise InputError(f"{command} reads {arity} lines per job from stdin")
        return [lines[i:i + arity] for i in range(0, len(lines), arity)]
    if arity is None:
        return [exprs]
    if len(exprs) != arity:
        raise InputError(f"{command} takes {arity} expression(s), got {len(exprs)}")
    return [exprs]


def run(argv) -> tuple:
    """Run one invocation; returns ``(exit_code, stdout_text, stderr_text)``."""
    fmt = "json" if "--format=json" in argv or ("--format" in argv and "json" in argv) else "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.order < 0:
            raise InputError("--order must be nonnegative")
        if not 4 <= args.precision <= 30:
            raise InputError("--precision must lie in [4, 30]")
        _DIGITS[0] = args.precision
        out = []
        for job in _inputs(args.expr, args.command):
            result = HANDLERS[args.command](job, args)
            if args.format == "json":
                out.append(json.dumps(result.json(args.command, args.order, args.raw), sort_keys=True))
            else:
                out.append(result.text(args.raw))
                out.extend(f"warning: {w}" for w in result.warnings)
        return 0, "\n".join(out) + "\n", ""
    except NestsumError as exc:
        return _failure(exc, exc.exit_code, fmt)
    except ZeroDivisionError as exc:
        return _failure(exc, 1, fmt)
    except RecursionError as exc:
        return _failure(UnsupportedShapeError("recursion too deep"), 2, fmt)


def _failure(exc, code, fmt):
    message = str(exc)
    stdout = ""
    if fmt == "json":
        stdout = json.dumps({"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": message,
                                                         "exit_code": code}}, sort_keys=True) + "\n"
    return code, stdout, f"error: {message}\n"


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help", "--version") for a in argv):
        build_parser().parse_args(argv)
    code, out, err = run(list(argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
