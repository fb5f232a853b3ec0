"""
Expansions in eps
=================

Gamma functions, Pochhammer symbols and hypergeometric functions with
parameters of the form integer + alpha*eps expand into S-sums at
infinity, that is multiple zeta values and their colored cousins.
"""

import mpmath

from nestsum import HypergeometricSpec, eval_numeric, expand_pFq, format_series, parse_series

# Gamma(1+eps) needs only zeta values and the Euler constant
g = parse_series("Gamma(1+eps)", 3)
print("Gamma(1+eps) =", format_series(g))

# a pole at eps = 0 has to be requested explicitly
g0 = parse_series("Gamma(eps)", 1, extract_poles=True)
print("Gamma(eps)   =", format_series(g0))

# 2F1(eps, -eps; 1; 1/2)
spec = HypergeometricSpec(((0, 1), (0, -1)), ((1, 0),), "1/2")
f = expand_pFq(spec, 3)
print("2F1(eps,-eps;1;1/2) =", format_series(f))

# every coefficient evaluates to a number
for k, value in sorted(eval_numeric(f, precision=20).items()):
    print(f"  eps^{k}:", mpmath.nstr(value, 20))
