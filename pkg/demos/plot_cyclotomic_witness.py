"""
Cyclotomic witnesses on Z/n
===========================

Fold the p-th cyclotomic polynomial onto Z/n, where p is the least prime not
dividing n.  Its norm is a resultant against x^n - 1, which always comes out
as p in absolute value.  That gives the upper bound (1/n) log p for cyclic
groups.

"""

from abelian_lehmer import (IntPoly, cyclotomic, cyclotomic_witness, mahler_finite, resultant,
                            rho)

print(" n  rho  Res(Phi_p, x^n-1)  Res(x^n-1, Phi_p)  witness measure")
for n in range(2, 19):
    p = rho(n)
    xn = IntPoly.monomial(n) - IntPoly.const(1)
    f = cyclotomic_witness(n)
    print(f"{n:2d}  {p:3d}  {resultant(cyclotomic(p), xn):17d}  {resultant(xn, cyclotomic(p)):17d}  "
          f"{mahler_finite(f)}")

# Swapping the arguments multiplies by (-1)^(deg P deg Q); the two columns only
# differ when p = 2 and n is odd.

# rho(n) grows only like log n, e.g. for primorials:
for n in (2, 6, 30, 210, 2310, 30030):
    print(f"rho({n}) = {rho(n)}")
