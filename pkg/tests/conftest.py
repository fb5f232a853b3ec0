import random
from fractions import Fraction

import mpmath
import pytest

from nestsum import Letter


def mpq(x):
    """mpmath value of a Fraction or int (mpmath cannot convert Fraction directly); mpf passes through."""
    if isinstance(x, mpmath.mpf):
        return x
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def direct_ssum(weights, letters, n):
    """Independent oracle: nested sum by explicit recursion on the definition."""
    if not weights:
        return Fraction(1)
    m, x = weights[0], Fraction(letters[0])
    return sum((x ** j / Fraction(j) ** m * direct_ssum(weights[1:], letters[1:], j) for j in range(1, n + 1)),
               Fraction(0))


def random_word(rng, max_depth=3, max_weight=4, letters=(1, -1, Fraction(1, 2))):
    depth = rng.randint(1, max_depth)
    weights = [1] * depth
    for _ in range(rng.randint(0, max_weight - depth)):
        weights[rng.randrange(depth)] += 1
    return tuple(weights), tuple(Letter(rng.choice(letters)) for _ in range(depth))


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_task(rng, kind, max_weight=5, letters=(1, -1, Fraction(1, 2))):
    """Random reduction task of the given kind with total weight <= max_weight."""
    from nestsum import ReductionTask

    two = kind in ("convolution", "binomial_convolution")
    budget = max_weight - (2 if two else 1)

    def side():
        nonlocal budget
        m = 1 + rng.randint(0, min(1, budget))
        budget -= m - 1
        depth = rng.randint(0, min(2, budget))
        ws = []
        for _ in range(depth):
            w = 1 + rng.randint(0, max(0, min(1, budget - depth)))
            ws.append(w)
            budget -= w
        xs = [rng.choice(letters) for _ in ws]
        return m, rng.choice(letters), (tuple(ws), tuple(xs))

    m1, x1, in1 = side()
    if not two:
        return ReductionTask(kind, m1, x1, in1)
    m2, x2, in2 = side()
    return ReductionTask(kind, m1, x1, in1, m2, x2, in2)


def structurally_reduced(expr):
    """No factorials (binomials), no S-sum products, sums only at the running index."""
    for t in expr.terms:
        if t.fact or len(t.sums) > 1:
            return False
        if any(s.offset != 0 for s in t.sums):
            return False
    return True


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
