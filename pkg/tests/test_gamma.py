from fractions import Fraction

import mpmath
import pytest

from nestsum import (
    Const, Expression, GammaAtom, LaurentSeries, Pochhammer, S, eval_numeric, gamma_ratio_expand,
    pochhammer_expand, product_to_gamma,
)
from nestsum.errors import InputError, UnsupportedShapeError
from nestsum.gamma import assert_gamma_free, gamma_atoms_value
from nestsum.kernel import GAMMA_E, zeta
from nestsum.ssum import evaluate_exact

from conftest import mpq


def _at_eps(series, eps, n=None, digits=30):
    bind = {"eps": eps}
    if n is not None:
        bind[series.coefficient(0, Expression.zero()).var] = n
    total = mpmath.mpf(0)
    for k, c in series.items():
        v = eval_numeric(c if n is None else Expression.const(evaluate_exact(c, n)), precision=digits)
        total += (v if not isinstance(v, Fraction) else mpq(v)) * mpq(eps) ** k
    return total


def test_gamma_one_plus_eps_symbolic():
    s = gamma_ratio_expand([GammaAtom(1, 0, 1)], 3)
    z2, z3 = Const.atom(zeta(2)), Const.atom(zeta(3))
    g = GAMMA_E
    expected = {
        0: Const.rational(1),
        1: -g,
        2: g * g * Const.rational(Fraction(1, 2)) + z2 * Const.rational(Fraction(1, 2)),
        3: -(g * g * g * Const.rational(Fraction(1, 6)) + g * z2 * Const.rational(Fraction(1, 2))
             + z3 * Const.rational(Fraction(1, 3))),
    }
    assert {k: c.constant_value() for k, c in s.items()} == expected


def test_gamma_one_plus_eps_numeric():
    s = gamma_ratio_expand([GammaAtom(1, 0, 1)], 3)
    eps = Fraction(1, 100)
    with mpmath.workdps(30):
        assert abs(_at_eps(s, eps) - mpmath.gamma(1 + mpq(eps))) < mpq(eps) ** 4 * 10


def test_index_ratio_at_three():
    s = gamma_ratio_expand([GammaAtom(1, 1, 1), GammaAtom(1, 1, 0, -1)], 1)
    assert s[1] == S("N", [1], [1]) - Expression.const(GAMMA_E, "N")
    assert evaluate_exact(s[1], 3) == Const.rational(Fraction(11, 6)) - GAMMA_E
    eps = Fraction(1, 1000)
    direct = mpmath.gamma(4 + mpq(eps)) / mpmath.gamma(4)
    assert abs(_at_eps(s, eps, 3) - direct) < 1e-5


def test_identical_atoms_cancel():
    s = gamma_ratio_expand([GammaAtom(1, 1, 0), GammaAtom(1, 1, 0, -1)], 3)
    assert s.as_dict() == {0: Expression.one("N")}


def test_gamma_e_cancels_in_ratio():
    atoms = [GammaAtom(1, 1, 2), GammaAtom(1, 0, 2, -1), GammaAtom(1, 1, 0, -1)]
    assert_gamma_free(gamma_ratio_expand(atoms, 3))


def test_pole_needs_extraction():
    with pytest.raises(InputError, match="unextracted pole"):
        gamma_ratio_expand([GammaAtom(0, 0, 1)], 2)
    s = gamma_ratio_expand([GammaAtom(0, 0, 1)], 2, extract_poles=True)
    eps = Fraction(1, 1000)
    assert abs(_at_eps(s, eps) - mpmath.gamma(mpq(eps))) < 1e-8


@pytest.mark.parametrize("m,expected", [(1, {0: 1, 1: 1}), (2, {0: 2, 1: 3, 2: 1}), (3, {0: 6, 1: 11, 2: 6})])
def test_pochhammer_small(m, expected):
    s = pochhammer_expand(Pochhammer(1, m), 2)
    assert {k: c.constant_value() for k, c in s.items()} == {k: Const.rational(v) for k, v in expected.items()}


def test_pochhammer_symbolic_length():
    s = pochhammer_expand(Pochhammer(1, "m"), 2)
    # eps^2 coefficient of (1+eps)_3 is 3! (S1^2 - S2)/2 = 6
    assert evaluate_exact(s[2], 3) == Const.rational(6)
    assert any(t.fact for t in s[0].terms)


def test_pochhammer_higher_base():
    s = pochhammer_expand(Pochhammer(Fraction(1, 2), 3, c=2), 2)
    eps = Fraction(1, 1000)
    direct = mpmath.rf(2 + mpq(eps) / 2, 3)
    assert abs(_at_eps(s, eps) - direct) < 1e-7


def test_pochhammer_unnormalized_base():
    with pytest.raises(InputError, match="unnormalized base"):
        pochhammer_expand(Pochhammer(1, 3, c=0), 2)


def test_product_to_gamma():
    assert product_to_gamma(0, 1) == [GammaAtom(1, 1, 1), GammaAtom(1, 0, 1, -1)]
    assert product_to_gamma(-1) == [GammaAtom(0, 1, 0), GammaAtom(0, 0, 0, -1)]
    atoms = product_to_gamma(1, 2)
    eps = mpmath.mpf(1) / 10
    for N in range(1, 7):
        direct = mpmath.fprod(j + 1 + 2 * eps for j in range(1, N + 1))
        assert abs(gamma_atoms_value(atoms, N, eps) - direct) < 1e-12 * direct


def test_product_to_gamma_slope():
    with pytest.raises(UnsupportedShapeError, match="not reducible to Gamma ratio"):
        product_to_gamma(0, 0, slope=2)


def test_half_integer_rejected():
    with pytest.raises(UnsupportedShapeError):
        GammaAtom(Fraction(1, 2))


def test_str():
    assert str(GammaAtom(1, 1, 0, -1)) == "Gamma(N+1)^-1"
    assert str(GammaAtom(0, 0, 1)) == "Gamma(eps)"
