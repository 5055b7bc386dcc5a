"""Mahler measures and Lehmer constants of compact abelian groups."""
from .exactpoly import CycloElem, IntPoly, cyclotomic, resultant
from .finite_measure import (CharPoly, Exact, NegInfinity, Numeric, compare_measure,
                             cyclotomic_witness, delta_witness, mahler_finite, norm_integer,
                             quotient_measure, rho, value_at)
from .groups import FiniteAbelianGroup, make_group, parse_group
from .search import (BudgetExceeded, SearchConfig, bounds_report, canonicalize, search_lambda,
                     verify_conjectures)
from .torus_measure import (LEHMER, FiberedPoly, LaurentPoly, borwein_fibered, is_kronecker,
                            lawton_specialize, mahler_lawton, mahler_mixed, mahler_t1, mahler_tk_grid)

__version__ = "0.1.0"
