from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from nestsum import Const, Expression, LaurentSeries, Letter, S, eval_numeric, evaluate_exact
from nestsum.kernel import zeta
from nestsum.errors import DivergenceError, InputError, UnboundSymbolError
from nestsum.kernel import GAMMA_E, partial_fraction, partial_fraction_two_families, series_exp
from nestsum.kernel.rational import RationalFunction, series_inverse
from nestsum.errors import UnsupportedShapeError


def _recombine(poly, parts, j):
    value = sum((c * Fraction(j) ** k for k, c in enumerate(poly)), Fraction(0))
    return value + sum((a / Fraction(j + c) ** e for (c, e), a in parts.items()), Fraction(0))


class TestLetters:
    def test_arithmetic(self):
        x = Letter.symbol("x")
        assert (x * x.inverse()).is_one
        assert Letter(Fraction(1, 2)) * Letter(2) == Letter(1)
        assert str(Letter(-1)) == "-1"

    def test_add_only_for_rationals(self):
        assert Letter(Fraction(1, 2)).add(Letter(Fraction(1, 3))) == Letter(Fraction(5, 6))
        assert Letter(1).add(Letter(-1)) is None

    def test_substitute(self):
        x = Letter.symbol("x")
        assert (x ** 2).substitute({"x": Fraction(1, 3)}) == Letter(Fraction(1, 9))


class TestPartialFractions:
    def test_telescoping_split(self):
        poly, parts = partial_fraction({0: 1, 1: 1})
        assert not poly
        assert parts == {(0, 1): 1, (1, 1): -1}

    def test_two_family_simple(self):
        out = partial_fraction_two_families({0: 1}, {0: 1})
        # 1/(j(n-j)) = 1/n (1/j + 1/(n-j))
        assert sorted((c, pole, fam, e) for c, pole, fam, _, e in out) == [
            (1, (0, 1), "j", 1), (1, (0, 1), "nj", 1)]

    def test_two_family_squared(self):
        n = 3
        out = partial_fraction_two_families({0: 2}, {0: 1})
        # spot check n=3, j=1: both sides 1/2
        j = 1
        total = Fraction(0)
        for c, (po, pm), fam, off, e in out:
            f = j + off if fam == "j" else n - j + off
            total += c / Fraction(n + po) ** pm / Fraction(f) ** e
        assert total == Fraction(1, 2)

    @given(st.dictionaries(st.integers(-3, 3), st.integers(-2, 3), max_size=3), st.integers(4, 30))
    @settings(max_examples=60, deadline=None)
    def test_recombination(self, poles, j):
        poly, parts = partial_fraction(poles)
        expected = Fraction(1)
        for c, m in poles.items():
            expected /= Fraction(j + c) ** m
        assert _recombine(poly, parts, j) == expected

    @given(st.dictionaries(st.integers(0, 2), st.integers(1, 3), min_size=1, max_size=2),
           st.dictionaries(st.integers(0, 2), st.integers(1, 3), min_size=1, max_size=2),
           st.integers(6, 12), st.data())
    @settings(max_examples=40, deadline=None)
    def test_two_family_recombination(self, jp, np_, n, data):
        j = data.draw(st.integers(1, n - 1))
        expected = Fraction(1)
        for c, m in jp.items():
            expected /= Fraction(j + c) ** m
        for d, m in np_.items():
            expected /= Fraction(n - j + d) ** m
        total = Fraction(0)
        for c, npole, fam, off, e in partial_fraction_two_families(jp, np_):
            f = j + off if fam == "j" else n - j + off
            term = c / Fraction(f) ** e
            if npole is not None:
                term /= Fraction(n + npole[0]) ** npole[1]
            total += term
        assert total == expected

    def test_errors(self):
        with pytest.raises(InputError, match="unsupported offset"):
            partial_fraction({Fraction(1, 2): 1})
        with pytest.raises(InputError, match="not a two-family denominator"):
            partial_fraction_two_families([0], {0: 1})


class TestSeries:
    def test_product_truncation(self):
        a = LaurentSeries({0: Const.rational(1), 1: Const.rational(1)}, 2)
        b = LaurentSeries({0: Const.rational(1), 1: Const.rational(-1)}, 2)
        assert (a * b).as_dict() == {0: Const.rational(1), 2: Const.rational(-1)}

    def test_pole_times_zero(self):
        a = LaurentSeries({-1: Const.rational(1)}, 3)
        b = LaurentSeries({1: Const.rational(1)}, 3)
        assert (a * b).as_dict() == {0: Const.rational(1)}

    def test_exp_squared(self):
        z2 = Const.atom(zeta(2))
        log = LaurentSeries({1: -GAMMA_E, 2: z2 * Const.rational(Fraction(1, 2))}, 2)
        g = series_exp(log, Const.rational(1))
        sq = (g * g).as_dict()
        assert sq[1] == GAMMA_E * Const.rational(-2)
        assert sq[2] == GAMMA_E * GAMMA_E * Const.rational(2) + z2

    def test_series_inverse(self):
        s = LaurentSeries({0: Const.rational(2), 1: Const.rational(1)}, 4)
        inv = series_inverse(s, 4)
        assert (s * inv).truncate(4).as_dict() == {0: Const.rational(1)}


class TestNumeric:
    def test_finite_values(self):
        assert evaluate_exact(S("n", [1], [1]), 4) == Const.rational(Fraction(25, 12))
        assert evaluate_exact(S("n", [1, 1], [1, 1]), 2) == Const.rational(Fraction(7, 4))

    def test_zeta2(self):
        v = eval_numeric(Expression.const(Const.atom(zeta(2))), precision=15)
        assert abs(v - mpmath.pi ** 2 / 6) < mpmath.mpf(10) ** -12

    def test_unbound(self):
        with pytest.raises(UnboundSymbolError, match="unbound"):
            eval_numeric(S("n", [1], [1]))

    def test_divergent(self):
        with pytest.raises(DivergenceError, match="divergent"):
            eval_numeric(Expression.const(Const.atom(zeta(1))))


class TestRationalFunction:
    def test_linear_factors(self):
        c, f = RationalFunction("2*(N+1+eps)/(N+2)").linear_factors()
        assert c == 2
        assert f == [(1, 1, 1), (2, 0, -1)]

    def test_not_linear(self):
        with pytest.raises(UnsupportedShapeError, match="not linear-factorable"):
            RationalFunction("N^2+1").linear_factors()

    def test_series_at(self):
        s = RationalFunction("1/(N+eps)").series_at(2, 2)
        assert s.as_dict() == {0: Const.rational(Fraction(1, 2)), 1: Const.rational(Fraction(-1, 4)),
                               2: Const.rational(Fraction(1, 8))}
