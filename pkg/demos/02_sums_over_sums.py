"""
Reducing sums of S-sums
=======================

Convolutions, conjugations and definite sums all collapse back to
plain S-sums.  The reductions are exact, so evaluating at small n
reproduces the brute-force sum.
"""

from fractions import Fraction

from nestsum import Index, conjugate, convolve, eval_numeric, format_expression, parse_expression, sum_range

# sum_{j=1}^{n-1} 1/j^2 * 1/(n-j)
conv = convolve(2, (), 1, 1, (), 1)
print("convolution =", format_expression(conv))
n = 4
brute = sum(Fraction(1, j * j * (n - j)) for j in range(1, n))
print(f"at n = {n}: {eval_numeric(conv, {'n': n})} (brute force {brute})")

# sum_{j=1}^n (-1)^(j+1) C(n,j) (1/2)^j / j
conj = conjugate(1, (), Fraction(1, 2))
print("conjugation =", format_expression(conj))

# definite sum of a summand that itself contains a sum
summand = parse_expression("S(j; 1; 1) / j")
total = sum_range(summand.with_var("j"), 1, Index("n"), "n")
print("sum_{j<=n} S(j;1;1)/j =", format_expression(total))

# a convergent sum to infinity gives a constant
tail = sum_range(parse_expression("S(j; 1; 1) / j^2").with_var("j"), 1, "inf")
print("sum_j S(j;1;1)/j^2 =", format_expression(tail), "=", eval_numeric(tail))
