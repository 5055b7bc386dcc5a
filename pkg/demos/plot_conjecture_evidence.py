"""
Searching for the Lehmer constant of small groups
=================================================

Compare bounded exhaustive searches with the conjectured values (1/n) log rho(n)
for cyclic groups and (1/2^k) log(2^k - 1) for elementary 2-groups.  Agreement
inside a coefficient box is evidence only.  A value below the conjecture gets
flagged loudly.

"""

import logging

from abelian_lehmer import CharPoly, make_group, mahler_finite, value_at, verify_conjectures

logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")

rows = verify_conjectures(9, 2, pow2_max=2)
for r in rows:
    print(f"{r.label:>5}  search {str(r.search_min):>14}  conjectured {str(r.conjectured):>14}  {r.status}")

# Z/6 is the odd one out.  chi0 + chi2 is 2 at the identity and at 3, and a unit elsewhere.
G = make_group([6])
f = CharPoly.from_vector(G, [1, 0, 1, 0, 0, 0])
print("values of chi0 + chi2 on Z/6:", [value_at(f, x).to_complex() for x in G.elements])
print("measure:", mahler_finite(f), "versus the conjectured (1/6) log 5")

# It is the pullback of chi0 + chi1 from the quotient Z/3, so it can never beat lambda(Z/3).
