from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nestsum import Const, Expression, Index, Letter, S, SSum, canonicalize, evaluate_exact, stuffle_product, synchronize
from nestsum.errors import InputError
from nestsum.kernel import MzvSymbol
from nestsum.ssum import Term, evaluate_rational

from conftest import direct_ssum, random_word


def _value(e, n, **bind):
    return evaluate_rational(e, n, bind or None)


def test_product_s1_squared():
    p = S("n", [1], [1]) * S("n", [1], [1])
    assert p == S("n", [1, 1], [1, 1]).scale(2) - S("n", [2], [1])
    for n in range(1, 11):
        assert _value(p, n) == direct_ssum((1,), (1,), n) ** 2


def test_product_with_empty_sum():
    s = S("n", [2, 1], [1, -1])
    assert s * Expression.one() == s


def test_product_two_letters():
    x, y = Letter(Fraction(1, 2)), Letter(-1)
    p = stuffle_product(SSum(0, (1,), (x,)), SSum(0, (2,), (y,)))
    expected = S("n", [1, 2], [x, y]) + S("n", [2, 1], [y, x]) - S("n", [3], [x * y])
    assert p == expected
    for n in range(1, 11):
        assert _value(p, n) == direct_ssum((1,), (x.coeff,), n) * direct_ssum((2,), (y.coeff,), n)


def test_unsynchronized_operands():
    with pytest.raises(InputError, match="unsynchronized operands"):
        stuffle_product(SSum(0, (1,), (Letter(1),)), SSum(1, (1,), (Letter(1),)))


def test_mixed_offsets_multiply_after_sync():
    a = Expression.ssum((1,), (Letter(1),), -1)
    b = Expression.ssum((1,), (Letter(1),), 0)
    p = a * b
    for n in range(1, 9):
        assert _value(p, n) == direct_ssum((1,), (1,), n - 1) * direct_ssum((1,), (1,), n)


@pytest.mark.parametrize("offset,weights,expected", [
    (-1, (1,), lambda n: direct_ssum((1,), (1,), n) - Fraction(1, n)),
    (1, (1,), lambda n: direct_ssum((1,), (1,), n) + Fraction(1, n + 1)),
    (-1, (1, 1), lambda n: direct_ssum((1, 1), (1, 1), n) - direct_ssum((1,), (1,), n) / n),
])
def test_synchronize_examples(offset, weights, expected):
    e = synchronize(SSum(offset, weights, (Letter(1),) * len(weights)), 0)
    assert all(s.offset == 0 for t in e.terms for s in t.sums)
    for n in range(2, 11):
        assert _value(e, n) == expected(n)


def test_synchronize_s1_minus_one_symbolic():
    e = synchronize(SSum(-1, (1,), (Letter(1),)), 0)
    assert e == S("n", [1], [1]) - Expression.monomial(poles={0: 1})


def test_synchronize_infinity():
    with pytest.raises(InputError, match="cannot synchronize infinity"):
        synchronize(MzvSymbol((2,), (Letter(1),)), 0)


def test_canonical_idempotent_and_zero_drop():
    e = S("n", [3], [1]).scale(0) + S("n", [2], [1])
    assert e == S("n", [2], [1])
    c = canonicalize(S("n", [1], [1]) * S("n", [2], [-1]))
    assert canonicalize(c) == c
    assert str(canonicalize(c)) == str(c)


def test_product_term_expanded_by_canonicalize():
    t = Term.make(sums=(SSum(0, (1,), (Letter(1),)), SSum(0, (1,), (Letter(1),))))
    e = canonicalize(Expression({t: Const.rational(1)}))
    assert e == S("n", [1, 1], [1, 1]).scale(2) - S("n", [2], [1])


def test_length_mismatch():
    with pytest.raises(InputError, match="length mismatch"):
        SSum(0, (1,), (Letter(1), Letter(-1)))


def test_index_str():
    assert str(Index("n", -1)) == "n-1"


@given(st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_stuffle_exact_property(r):
    wa, la = random_word(r)
    wb, lb = random_word(r)
    p = S("n", wa, la) * S("n", wb, lb)
    assert all(len(t.sums) <= 1 for t in p.terms)
    for n in (1, 2, 5, 8):
        assert _value(p, n) == direct_ssum(wa, [x.coeff for x in la], n) * direct_ssum(wb, [x.coeff for x in lb], n)


@given(st.randoms(use_true_random=False), st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_synchronize_property(r, offset):
    w, l = random_word(r)
    e = synchronize(SSum(offset, w, l), 0)
    for n in range(max(1, -offset), 8):
        assert _value(e, n) == direct_ssum(w, [x.coeff for x in l], n + offset)


def test_symbolic_letter_value():
    x = Letter.symbol("x")
    e = S("n", [1], [x])
    assert evaluate_exact(e, 2, {"x": Fraction(1, 2)}) == Const.rational(Fraction(1, 2) + Fraction(1, 8))
