"""
Difference equations
====================

A first-order recursion in N is solved in closed form and compared to
running the recursion directly.
"""

from nestsum import DifferenceEquation, format_series, iterate_numeric, parse_expression, solve_first_order

# N I(N) - N I(N-1) = 1, I(0) = 0 gives the harmonic numbers
harmonic = DifferenceEquation(["N", "N"], 1, [0])
print("I(N) =", format_series(solve_first_order(harmonic, 0).closed_form))

# with eps in the coefficients: (N + eps) I(N) - N I(N-1) = 1
eq = DifferenceEquation(["N + eps", "N"], 1, [0])
sol = solve_first_order(eq, 2)
print("I(N) =", format_series(sol.closed_form))

values = iterate_numeric(eq, 6, 2)
for N in (1, 3, 6):
    closed = sol.at(N)
    direct = {k: c for k, c in values[N].items()}
    print(f"N = {N}:", {k: str(v) for k, v in closed.items()}, "vs", {k: str(v) for k, v in direct.items()})
