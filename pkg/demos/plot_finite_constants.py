"""
Smallest positive measures on tiny finite groups
================================================

On a finite abelian group F the log Mahler measure of an integer combination
of characters is (1/|F|) log |N(f)|, where N(f) is the product of the values.
The norm is an integer, so the smallest positive measure comes from the
smallest norm of absolute value at least 2.

"""

from abelian_lehmer import CharPoly, SearchConfig, make_group, mahler_finite, search_lambda

# Z/2: the values of a*chi0 + b*chi1 are a+b and a-b, so N = a^2 - b^2.
Z2 = make_group([2])
f = CharPoly.from_vector(Z2, [2, 1])
print("Z/2, 2 chi0 + chi1:", mahler_finite(f), "=", float(mahler_finite(f)))

# Norm 1 is measure 0, and 3 is the first value past it.
for vec in ([1, 0], [1, 1], [2, 1], [3, 1]):
    print("  ", vec, "->", mahler_finite(CharPoly.from_vector(Z2, vec)))

# Now let the exhaustive search confirm the minima with |coeff| <= B.
for factors, B in (([2], 2), ([3], 1), ([4], 2), ([2, 2], 2)):
    G = make_group(factors)
    res = search_lambda(SearchConfig(G, B))
    print(f"{str(G):>10}  B={B}  min {res.min}  witness {res.witness.to_vector()}  "
          f"scanned {res.scanned}, pruned {res.pruned_by_symmetry}")
