"""
A mixed group beating Lehmer's polynomial
=========================================

Lehmer's degree-10 polynomial has the smallest known Mahler measure on the
circle.  On T + Z/2 a function is a pair of polynomials, and its measure is the
average of their two measures.  If one of them is a product of cyclotomics it
contributes exactly 0.

"""

from abelian_lehmer import LEHMER, LaurentPoly, borwein_fibered, is_kronecker, mahler_mixed, mahler_t1
from abelian_lehmer.torus_measure import BORWEIN_F, BORWEIN_G

lehmer = mahler_t1(LEHMER)
print(f"m(Lehmer)  = {lehmer.value:.10f}  (+- {lehmer.err_bound:.1e})")

f = LaurentPoly.from_coeffs(BORWEIN_F)
g = LaurentPoly.from_coeffs(BORWEIN_G)

# f + g is decided to be cyclotomic by exact division, not by a float threshold.
print("f + g cyclotomic:", is_kronecker(f + g))
print(f"m(f - g)   = {mahler_t1(f - g).value:.10f}")

h = borwein_fibered()
m = mahler_mixed(h)
print(f"m(h)       = {m.value:.10f} = ({m.parts[0].value} + {m.parts[1].value:.10f}) / 2")
print("below Lehmer:", m.value < lehmer.value)
