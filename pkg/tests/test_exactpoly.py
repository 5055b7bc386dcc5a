import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from abelian_lehmer.exactpoly import (CycloElem, IntPoly, cyclo_from_exponents, cyclo_mul, cyclotomic,
                                      divide_exact, divisors, eval_complex, horner_error_bound, parse_poly,
                                      poly_gcd, resultant, squarefree_decomposition, totient)
from oracles import bareiss_det, sylvester_resultant

small_polys = st.lists(st.integers(-6, 6), min_size=1, max_size=7).map(IntPoly).filter(lambda p: not p.is_zero())


def _naive_cyclotomic(n):
    # independent route: prod_{d | n} (x^d - 1)^{mu(n/d)} via repeated exact division
    def mu(m):
        out, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out
    num, den = IntPoly.const(1), IntPoly.const(1)
    for d in divisors(n):
        f = IntPoly.monomial(d) - IntPoly.const(1)
        if mu(n // d) == 1:
            num = num * f
        elif mu(n // d) == -1:
            den = den * f
    return divide_exact(num, den)


def test_cyclotomic_examples():
    assert cyclotomic(1).coeffs == (-1, 1)
    assert cyclotomic(5).coeffs == (1, 1, 1, 1, 1)
    assert cyclotomic(12).coeffs == (1, 0, -1, 0, 1)
    assert cyclotomic(12) == _naive_cyclotomic(12)


@pytest.mark.parametrize("n", range(1, 201))
def test_cyclotomic_product_and_degree(n):
    prod = IntPoly.const(1)
    for d in divisors(n):
        prod = prod * cyclotomic(d)
    assert prod == IntPoly.monomial(n) - IntPoly.const(1)
    assert cyclotomic(n).degree == totient(n)


@pytest.mark.parametrize("n", [30, 36, 105, 120])
def test_cyclotomic_matches_moebius_route(n):
    assert cyclotomic(n) == _naive_cyclotomic(n)


def test_resultant_examples():
    x6 = IntPoly.monomial(6) - IntPoly.const(1)
    assert resultant(cyclotomic(5), x6) == 5
    assert resultant(cyclotomic(3), x6) == 0
    assert resultant(IntPoly((-2, 1)), IntPoly((-3, 1))) == -1
    with pytest.raises(ValueError):
        resultant(IntPoly(), x6)


def test_bareiss_oracle_itself():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


def test_resultant_against_sylvester_determinant():
    rng = random.Random(7)
    for _ in range(600):
        P = IntPoly([rng.randint(-6, 6) for _ in range(rng.randint(1, 9))])
        Q = IntPoly([rng.randint(-6, 6) for _ in range(rng.randint(1, 9))])
        if P.is_zero() or Q.is_zero():
            continue
        assert resultant(P, Q) == sylvester_resultant(P, Q), (P, Q)


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys)
def test_resultant_antisymmetry(P, Q):
    assert resultant(P, Q) == (-1) ** (P.degree * Q.degree) * resultant(Q, P)


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_resultant_multiplicative(P, Q, R):
    assert resultant(P, Q * R) == resultant(P, Q) * resultant(P, R)


def test_cyclo_mul_examples():
    x4 = CycloElem.from_poly(4, IntPoly((0, 1)))
    assert cyclo_mul(x4, x4) == CycloElem.const(4, -1)
    x3 = CycloElem.from_poly(3, IntPoly((0, 1)))
    assert cyclo_mul(x3, x3).rep == (-1, -1)
    a = CycloElem.from_poly(7, IntPoly((3, -1, 2, 5)))
    assert cyclo_mul(a, CycloElem.const(7, 1)) == a
    with pytest.raises(ValueError):
        cyclo_mul(x3, x4)


def test_cyclo_from_exponents_examples():
    assert cyclo_from_exponents(2, [(0, 1), (1, 1)]).is_zero()
    assert cyclo_from_exponents(4, [(0, 2), (1, 1)]).rep == (2, 1)
    assert cyclo_from_exponents(1, [(0, 9)]).to_int() == 9


def _rand_elem(rng, N):
    return CycloElem.from_poly(N, [rng.randint(-9, 9) for _ in range(N)])


def test_cyclo_ring_axioms():
    rng = random.Random(3)
    for _ in range(400):
        N = rng.randint(1, 24)
        a, b, c = (_rand_elem(rng, N) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_cyclo_elements_reduced():
    rng = random.Random(4)
    for _ in range(100):
        N = rng.randint(1, 40)
        a = _rand_elem(rng, N)
        assert a.degree < totient(N)


def test_eval_complex_examples():
    assert abs(eval_complex(IntPoly((1, 0, 1)), 1j)) < 1e-15
    assert eval_complex(IntPoly((-2, 1)), 0) == -2
    assert eval_complex(cyclotomic(3), 1) == 3


def test_eval_complex_error_bound_holds():
    rng = random.Random(5)
    for _ in range(200):
        P = IntPoly([rng.randint(-1000, 1000) for _ in range(rng.randint(1, 30))])
        z = cmath.exp(2j * math.pi * rng.random()) * rng.uniform(0.5, 1.5)
        exact = sum(complex(a) * z ** i for i, a in enumerate(P.coeffs))
        assert abs(eval_complex(P, z) - exact) <= horner_error_bound(P, z) + 1e-9


def test_cyclo_float_evaluation_matches_exponent_sum():
    rng = random.Random(6)
    for _ in range(300):
        N = rng.randint(1, 100)
        terms = [(rng.randrange(N), rng.randint(-1000, 1000)) for _ in range(rng.randint(1, 12))]
        direct = sum(c * cmath.exp(2j * math.pi * e / N) for e, c in terms)
        assert abs(cyclo_from_exponents(N, terms).to_complex() - direct) < 1e-9


def test_parse_poly():
    assert parse_poly("1,1,0,-1").coeffs == (1, 1, 0, -1)
    with pytest.raises(ValueError, match="'a'"):
        parse_poly("1,a")


def test_squarefree_decomposition_and_gcd():
    P = IntPoly((-2, 1)) ** 3 * IntPoly((1, 1, 1)) * IntPoly((3, 0, 2)) ** 2 * -6
    c, parts = squarefree_decomposition(P)
    Q = IntPoly.const(c)
    for a, m in parts:
        Q = Q * a ** m
    assert Q == P
    assert sorted(m for _, m in parts) == [1, 2, 3]
    assert poly_gcd(IntPoly((2, 2)), IntPoly((-4, 0, 4))) == IntPoly((1, 1))
