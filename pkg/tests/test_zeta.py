from fractions import Fraction

import mpmath
import pytest

from nestsum import Const, Letter, SSum, constant_stuffle, limit_to_infinity, mzv_numeric, strict_mzv
from nestsum.errors import DivergenceError
from nestsum.kernel import MzvSymbol, const_numeric, zeta
from nestsum.zeta import is_convergent

from conftest import random_word

TOL = mpmath.mpf(10) ** -12


def Z(*weights, letters=None):
    letters = letters or (1,) * len(weights)
    return MzvSymbol(tuple(weights), tuple(Letter(x) for x in letters))


def test_limit_examples():
    assert limit_to_infinity(SSum(0, (2,), (Letter(1),))) == zeta(2)
    with pytest.raises(DivergenceError, match="divergent limit"):
        limit_to_infinity(SSum(0, (1,), (Letter(1),)))
    ln2 = limit_to_infinity(SSum(0, (1,), (Letter(Fraction(1, 2)),)))
    assert mpmath.nstr(mzv_numeric(ln2, 15), 12) == "0.69314718056"


@pytest.mark.parametrize("k,expected", [(2, "1.64493406685"), (3, "1.20205690316")])
def test_single_zetas(k, expected):
    assert mpmath.nstr(mzv_numeric(zeta(k), 15), 12) == expected


def test_depth_two_splitting():
    with mpmath.workdps(30):
        oracle = mpmath.nsum(lambda i, j: 1 / (i + j) ** 5 / j ** 3, [1, mpmath.inf], [1, mpmath.inf])
        value = const_numeric(strict_mzv((5, 3)), 25)
        assert abs(value - oracle) < mpmath.mpf(10) ** -14
        s53 = mzv_numeric(Z(5, 3), 25)
        assert abs(s53 - (value + mpmath.zeta(8))) < mpmath.mpf(10) ** -20


def test_alternating_values():
    with mpmath.workdps(30):
        # S(inf;1;-1) = -ln 2 and S(inf;2,1;1,-1)
        assert abs(mzv_numeric(Z(1, letters=(-1,)), 20) + mpmath.log(2)) < TOL
        # inner partial sum: sum_{j<=i} (-1)^j/j = -ln 2 + (-1)^i beta(i+1)
        beta = lambda x: (mpmath.digamma((x + 1) / 2) - mpmath.digamma(x / 2)) / 2
        oracle = -mpmath.log(2) * mpmath.zeta(2) + mpmath.nsum(lambda i: (-1) ** i * beta(i + 1) / i ** 2,
                                                              [1, mpmath.inf])
        assert abs(mzv_numeric(Z(2, 1, letters=(1, -1)), 20) - oracle) < TOL


@pytest.mark.parametrize("a,b", [((2,), (2,)), ((2,), (3,)), ((2, 1), (3,)), ((2, 2), (2,))])
def test_constant_stuffle_numeric(a, b):
    prod = constant_stuffle(Z(*a), Z(*b))
    with mpmath.workdps(30):
        lhs = mzv_numeric(Z(*a), 20) * mzv_numeric(Z(*b), 20)
        assert abs(const_numeric(prod, 20) - lhs) < TOL
    assert {sym.weight for mono in prod.terms for sym, _ in mono} == {sum(a) + sum(b)}


def test_zeta2_squared_form():
    prod = constant_stuffle(zeta(2), zeta(2))
    assert prod == Const.atom(Z(2, 2), 1, 2) - Const.atom(zeta(4))
    assert abs(const_numeric(prod, 20) - Fraction(5, 2) * mpmath.zeta(4)) < TOL


def test_zeta2_zeta3_form():
    prod = constant_stuffle(zeta(2), zeta(3))
    assert prod == Const.atom(Z(2, 3)) + Const.atom(Z(3, 2)) - Const.atom(zeta(5))


def test_stuffle_with_empty():
    assert constant_stuffle(zeta(3), MzvSymbol((), ())) == Const.atom(zeta(3))


def test_divergent_factor_rejected():
    with pytest.raises(DivergenceError, match="divergent"):
        constant_stuffle(zeta(1), zeta(2))


def test_random_stuffle_pairs(rng):
    checked = 0
    while checked < 25:
        wa, la = random_word(rng, max_depth=2, max_weight=3)
        wb, lb = random_word(rng, max_depth=2, max_weight=3)
        a, b = MzvSymbol(wa, la), MzvSymbol(wb, lb)
        if not (is_convergent(a) and is_convergent(b)):
            continue
        try:
            prod = constant_stuffle(a, b)
        except DivergenceError:
            continue
        with mpmath.workdps(30):
            lhs = mzv_numeric(a, 18) * mzv_numeric(b, 18)
            assert abs(const_numeric(prod, 18) - lhs) < TOL, (a, b)
        checked += 1


def test_convergence_classification_matches_tail(rng):
    for _ in range(20):
        w, l = random_word(rng, max_depth=2, max_weight=4)
        sym = MzvSymbol(w, l)
        head_divergent = w[0] == 1 and l[0].is_one
        assert is_convergent(sym) == (not head_divergent)
