"""
Nested harmonic sums
====================

Build S-sums, multiply them with the stuffle product and check the
result against direct summation at a few values of n.
"""

from fractions import Fraction

from nestsum import SSum, eval_numeric, format_expression, parse_expression, stuffle_product

# S(n; 1; 1) is the harmonic number, S(n; 2; 1) its weight-2 cousin
h1 = SSum.from_word(0, ((1, 1),))
h2 = SSum.from_word(0, ((2, 1),))

# the product of two sums with the same upper bound is again a sum of sums
prod = stuffle_product(h1, h2)
print("S(n;1;1) * S(n;2;1) =", format_expression(prod))

# numeric check: exact rationals on both sides
for n in (1, 4, 9):
    lhs = eval_numeric(parse_expression("S(n;1;1) * S(n;2;1)"), {"n": n})
    rhs = eval_numeric(prod, {"n": n})
    print(f"n = {n}: {lhs} == {rhs}: {lhs == rhs}")

# letters other than 1 give generalized sums; S(n; 1; 1/2) sums (1/2)^i / i
half = parse_expression("S(n; 1; 1/2)")
print("S(6; 1; 1/2) =", eval_numeric(half, {"n": 6}))
print("check       =", sum(Fraction(1, 2) ** i / i for i in range(1, 7)))
