"""
Measures on the 2-torus via one-variable specialisations
========================================================

Substituting x -> t, y -> t^d turns 1 + x + y into 1 + t + t^d.  As d grows the
one-variable measures approach the two-variable one, which we also estimate by
quadrature on an offset grid.

"""

import math

from abelian_lehmer import LaurentPoly, mahler_lawton, mahler_tk_grid

p = LaurentPoly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})

grid = mahler_tk_grid(p, 2048)
print(f"grid M=2048: {grid.value:.7f}  (M vs M/2 change {grid.err_bound:.1e})")

prev = None
for d in (5, 10, 20, 40, 80, 160, 320):
    v = mahler_lawton(p, d).value
    step = "" if prev is None else f"  step {abs(v - prev):.1e}"
    print(f"d = {d:3d}: {v:.7f}  off by {abs(v - grid.value):.1e}{step}")
    prev = v

# The limit has a closed form, (3 sqrt 3 / 4 pi) L(2, chi_-3).
L = sum((1 / (3 * k + 1) ** 2 - 1 / (3 * k + 2) ** 2) for k in range(200000))
print(f"closed form: {3 * math.sqrt(3) / (4 * math.pi) * L:.7f}")
