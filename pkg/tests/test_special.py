from fractions import Fraction

import mpmath
import pytest

from nestsum import (
    AppellSpec, Const, Expression, GammaAtom, HypergeometricSpec, Letter, eval_numeric, expand_appell,
    expand_pFq, gamma_ratio_expand,
)
from nestsum.errors import DivergenceError, InputError, UnsupportedShapeError
from nestsum.kernel import MzvSymbol, const_numeric

from conftest import mpq


def _num(series, digits=20):
    return {k: (mpq(v) if isinstance(v, Fraction) else v) for k, v in eval_numeric(series, {}, digits).items()}


def test_zero_argument():
    s = expand_pFq(HypergeometricSpec([(1, 1), (2, 0)], [(3, 2)], 0), 3)
    assert s.as_dict() == {0: Expression.one()}


def test_eps_minus_eps_symbolic():
    x = Letter.symbol("x")
    s = expand_pFq(HypergeometricSpec([(0, 1), (0, -1)], [(1, 0)], x), 2)
    assert s[0] == Expression.one()
    assert 1 not in s.as_dict()
    assert s[2] == Expression.const(Const.atom(MzvSymbol((2,), (x,)), 1, -1))


def test_eps_minus_eps_at_one_matches_gauss():
    order = 4
    s = expand_pFq(HypergeometricSpec([(0, 1), (0, -1)], [(1, 0)], 1), order)
    g = gamma_ratio_expand([GammaAtom(1, 0, 1, -1), GammaAtom(1, 0, -1, -1)], order)
    a, b = _num(s), _num(g)
    for k in range(order + 1):
        assert abs(a.get(k, 0) - b.get(k, 0)) < 1e-15


@pytest.mark.parametrize("a,b,c", [(1, 1, 3), (1, 2, 4), (2, 3, 7)])
def test_gauss_cross_check(a, b, c):
    order = 4
    s = expand_pFq(HypergeometricSpec([(0, a), (0, b)], [(1, c)], 1), order)
    g = gamma_ratio_expand([GammaAtom(1, 0, c), GammaAtom(1, 0, c - a - b),
                            GammaAtom(1, 0, c - a, -1), GammaAtom(1, 0, c - b, -1)], order)
    x, y = _num(s), _num(g)
    for k in range(order + 1):
        assert abs(x.get(k, 0) - y.get(k, 0)) < 1e-12


def test_order_zero_matches_classical_series():
    # 3F2(1,1,2;3,2;1/2): eps-free parameters reduce to the plain series
    spec = HypergeometricSpec([(1, 1), (1, 0), (2, 0)], [(3, 0), (2, 0)], Fraction(1, 2))
    s = expand_pFq(spec, 0)
    with mpmath.workdps(30):
        direct = mpmath.hyp3f2(1, 1, 2, 3, 2, 0.5)
        assert abs(_num(s)[0] - direct) < 1e-10


def test_eps_series_matches_truncated_oracle():
    spec = HypergeometricSpec([(1, 1), (1, -2)], [(2, 3)], Fraction(1, 3))
    order = 3
    s = _num(expand_pFq(spec, order))
    with mpmath.workdps(30):
        f = lambda e: mpmath.hyp2f1(1 + e, 1 - 2 * e, 2 + 3 * e, mpmath.mpf(1) / 3)
        taylor = mpmath.taylor(f, 0, order)
    for k in range(order + 1):
        assert abs(s.get(k, 0) - taylor[k]) < 1e-12


class TestErrors:
    def test_p_q_shape(self):
        with pytest.raises(InputError, match="p = q\\+1"):
            HypergeometricSpec([1, 1, 1], [1], Fraction(1, 2))

    def test_lower_nonpositive(self):
        with pytest.raises(InputError, match="non-positive"):
            HypergeometricSpec([1, 1], [0], Fraction(1, 2))

    def test_negative_upper(self):
        with pytest.raises(UnsupportedShapeError):
            expand_pFq(HypergeometricSpec([(-1, 1), 1], [2], Fraction(1, 2)), 1)

    def test_half_integer(self):
        with pytest.raises(UnsupportedShapeError, match="half-integer"):
            HypergeometricSpec([Fraction(1, 2), 1], [2], Fraction(1, 2))

    def test_divergent_coefficient(self):
        with pytest.raises(DivergenceError, match="divergent"):
            expand_pFq(HypergeometricSpec([1, 1], [1], 1), 0)


class TestAppell:
    def test_f1_edge_is_2f1(self):
        spec = AppellSpec("F1", (1, 1), (1, 2), (1, 0), (2, 1), Fraction(1, 2), 0)
        ref = expand_pFq(HypergeometricSpec([(1, 1), (1, 2)], [(2, 1)], Fraction(1, 2)), 2)
        assert expand_appell(spec, 2) == ref

    def test_f2_edge_is_2f1(self):
        spec = AppellSpec("F2", (1, 1), (1, 0), (1, 2), ((2, 0), (3, 1)), 0, Fraction(1, 3))
        ref = expand_pFq(HypergeometricSpec([(1, 1), (1, 2)], [(3, 1)], Fraction(1, 3)), 2)
        assert expand_appell(spec, 2) == ref

    def test_f2_order_zero_against_double_sum(self):
        spec = AppellSpec("F2", (1, 1), 1, 1, (2, 2), Fraction(1, 2), Fraction(1, 3))
        s = expand_appell(spec, 0)
        value = _num(s, 20)[0]
        # truncated double sum; terms are bounded by (5/6)^M, tail below 1e-16 at M = 260
        with mpmath.workdps(30):
            x1, x2 = mpmath.mpf(1) / 2, mpmath.mpf(1) / 3
            oracle = mpmath.mpf(0)
            for M in range(260):
                for j in range(M + 1):
                    k = M - j
                    oracle += mpmath.binomial(M, j) * x1 ** j * x2 ** k / ((j + 1) * (k + 1))
        assert abs(value - oracle) < 1e-12
        # closed form: 4 ln(3/2) + 3 ln 2 - ln 6
        assert abs(value - (4 * mpmath.log(1.5) + 3 * mpmath.log(2) - mpmath.log(6))) < 1e-12

    @pytest.mark.parametrize("kind,a,b1,b2,c,x1,x2", [
        ("F1", (1, 1), (1, 0), (1, -1), (2, 0), Fraction(1, 2), Fraction(1, 3)),
        ("F2", (1, 0), (1, 1), (1, -1), ((2, 1), (1, 0)), Fraction(1, 4), Fraction(1, 3)),
    ])
    def test_eps_orders_against_double_sum(self, kind, a, b1, b2, c, x1, x2):
        order = 1
        s = _num(expand_appell(AppellSpec(kind, a, b1, b2, c, x1, x2), order), 20)
        cs = c if kind == "F2" else (c,)
        P = lambda p, e: p[0] + p[1] * e
        X1, X2 = mpq(x1), mpq(x2)

        def F(e):
            tot = mpmath.mpf(0)
            for M in range(90):
                for j in range(M + 1):
                    k = M - j
                    t = mpmath.rf(P(a, e), M) * mpmath.rf(P(b1, e), j) * mpmath.rf(P(b2, e), k)
                    t /= mpmath.factorial(j) * mpmath.factorial(k)
                    if kind == "F1":
                        t /= mpmath.rf(P(cs[0], e), M)
                    else:
                        t /= mpmath.rf(P(cs[0], e), j) * mpmath.rf(P(cs[1], e), k)
                    tot += t * X1 ** j * X2 ** k
            return tot

        with mpmath.workdps(30):
            taylor = mpmath.taylor(F, 0, order)
        for k in range(order + 1):
            assert abs(s.get(k, 0) - taylor[k]) < 1e-10

    def test_kind_validation(self):
        with pytest.raises(InputError):
            AppellSpec("F3", 1, 1, 1, 1, Fraction(1, 2), Fraction(1, 2))
        with pytest.raises(InputError):
            AppellSpec("F2", 1, 1, 1, (2,), Fraction(1, 2), Fraction(1, 2))

    def test_polynomial_growth_rejected(self):
        spec = AppellSpec("F1", (1, 1), (2, 0), (1, 0), (3, 0), Fraction(1, 3), Fraction(1, 4))
        with pytest.raises(UnsupportedShapeError):
            expand_appell(spec, 0)
