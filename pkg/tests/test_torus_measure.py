import itertools
import math
import random

import pytest

from abelian_lehmer.exactpoly import IntPoly, cyclotomic
from abelian_lehmer.groups import make_group
from abelian_lehmer.torus_measure import (BORWEIN_F, BORWEIN_G, LEHMER, FiberedPoly, LaurentPoly,
                                          borwein_fibered, cyclotomic_factorization, is_kronecker,
                                          lawton_specialize, mahler_lawton, mahler_mixed, mahler_t1,
                                          mahler_tk_grid)
from oracles import trapezoid_log_measure

ONE_X_Y = LaurentPoly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})


def lp(coeffs):
    return LaurentPoly.from_coeffs(coeffs)


def test_linear_root_outside():
    m = mahler_t1([-2, 1])
    assert m.value == pytest.approx(math.log(2), abs=1e-14)
    assert m.method == "jensen"


def test_lehmer_polynomial():
    m = mahler_t1(LEHMER)
    assert abs(m.value - 0.16235) < 1e-4
    assert m.value == pytest.approx(trapezoid_log_measure(LEHMER), abs=1e-4)
    assert not is_kronecker(lp(LEHMER))


def test_borwein_difference():
    fg = lp(BORWEIN_F) - lp(BORWEIN_G)
    assert abs(mahler_t1(fg).value - 0.30082) < 1e-4


def test_borwein_sum_is_kronecker():
    s = lp(BORWEIN_F) + lp(BORWEIN_G)
    assert is_kronecker(s)
    m = mahler_t1(s)
    assert m.value == 0.0 and m.kronecker


def test_is_kronecker_examples():
    assert is_kronecker(lp([1, 1, 1]))
    assert is_kronecker(LaurentPoly(1, {(-3,): -1}))
    assert not is_kronecker(lp([2, 1]))
    assert not is_kronecker(lp([1, 1, 1]) * lp([1, 1, 1]) * lp([2]))


def test_cyclotomic_factorization_splits_repeats():
    P = cyclotomic(3) ** 2 * cyclotomic(8) * IntPoly((-2, 1))
    found, rest = cyclotomic_factorization(P)
    assert found == {3: 2, 8: 1}
    assert rest == IntPoly((-2, 1))


def test_repeated_roots_are_exact():
    m = mahler_t1(IntPoly((-2, 1)) ** 3)
    assert m.value == pytest.approx(3 * math.log(2), abs=1e-12)
    assert m.err_bound < 1e-9


def test_zero_rejected():
    with pytest.raises(ValueError):
        mahler_t1([0, 0])


def rand_poly(rng, deg):
    while True:
        c = [rng.randint(-5, 5) for _ in range(deg + 1)]
        if c[-1] and any(c[:-1]):
            return IntPoly(c)


def test_jensen_additivity():
    rng = random.Random(17)
    for _ in range(150):
        p, q = rand_poly(rng, rng.randint(1, 10)), rand_poly(rng, rng.randint(1, 10))
        mp, mq, mpq = mahler_t1(p), mahler_t1(q), mahler_t1(p * q)
        assert abs(mpq.value - mp.value - mq.value) < 1e-9


def test_jensen_against_quadrature_oracle():
    rng = random.Random(18)
    for _ in range(40):
        p = rand_poly(rng, rng.randint(1, 20))
        m = mahler_t1(p)
        if m.kronecker:
            continue
        # the midpoint rule converges slowly near roots on the circle, so the tolerance is loose
        assert m.value == pytest.approx(trapezoid_log_measure(p.coeffs), abs=1e-3)


def test_monomial_invariance():
    rng = random.Random(19)
    for _ in range(50):
        p = rand_poly(rng, rng.randint(1, 12))
        a = rng.randint(-7, 7)
        assert mahler_t1(LaurentPoly.from_coeffs(p.coeffs, shift=a)).value == mahler_t1(p).value


def test_reciprocal_invariance():
    rng = random.Random(20)
    for _ in range(100):
        p = rand_poly(rng, rng.randint(1, 20))
        rev = IntPoly(tuple(reversed(p.coeffs)))
        assert abs(mahler_t1(rev).value - mahler_t1(p).value) < 1e-9


def test_nonnegative_on_integer_polynomials():
    rng = random.Random(21)
    for _ in range(200):
        assert mahler_t1(rand_poly(rng, rng.randint(1, 15))).value >= -1e-9


def _cyclotomic_products():
    conductors = range(1, 13)
    for r in range(1, 4):
        for ds in itertools.combinations_with_replacement(conductors, r):
            P = IntPoly.const(1)
            for d in ds:
                P = P * cyclotomic(d)
            yield ds, P
            yield ds, P * -1


def test_kronecker_consistency():
    count = 0
    for ds, P in _cyclotomic_products():
        assert is_kronecker(LaurentPoly.from_coeffs(P.coeffs)), ds
        assert mahler_t1(P).value < 1e-9
        count += 1
    assert count == 2 * (12 + 78 + 364)


def test_lawton_specialize_examples():
    xy = LaurentPoly(2, {(1, 1): 1})
    assert lawton_specialize(xy, (1, 2)).terms == {(3,): 1}
    assert mahler_t1(lawton_specialize(xy, (1, 2))).value == 0.0
    assert lawton_specialize(ONE_X_Y, (1, 5)) == lp([1, 1, 0, 0, 0, 1])
    assert lawton_specialize(ONE_X_Y, (1, 1)) == lp([1, 2])
    with pytest.raises(ValueError):
        lawton_specialize(ONE_X_Y, (1,))


def test_grid_examples():
    x = LaurentPoly(2, {(1, 0): 1})
    assert abs(mahler_tk_grid(x, 64).value) < 1e-12
    two = LaurentPoly(3, {(0, 0, 0): 2})
    assert mahler_tk_grid(two, 16).value == pytest.approx(math.log(2), abs=1e-12)
    with pytest.raises(ValueError):
        mahler_tk_grid(ONE_X_Y, 4)
    with pytest.raises(ValueError):
        mahler_tk_grid(LaurentPoly(4, {(0, 0, 0, 0): 1}), 8)


def test_grid_agrees_with_lawton():
    grid = mahler_tk_grid(ONE_X_Y, 1024)
    spec = mahler_t1(lawton_specialize(ONE_X_Y, (1, 97)))
    assert abs(grid.value - spec.value) < 1e-2
    assert grid.method == "grid"


def test_grid_retries_offset_on_zero():
    # 1 + x has a zero at s = 1/2, which the half-offset grid never hits, but 1 + x^2 ... x^M/2
    # lands on one for some resolutions; the retry must still produce a value
    p = LaurentPoly(1, {(0,): 1, (8,): 1})
    m = mahler_tk_grid(p, 16)
    assert abs(m.value) < 0.5


def test_lawton_convergence():
    vals = [mahler_lawton(ONE_X_Y, d).value for d in (5, 10, 20, 40, 80, 160)]
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    assert diffs[-1] < 5e-3
    assert abs(vals[-1] - mahler_tk_grid(ONE_X_Y, 2048).value) < 1e-2


def test_mixed_examples():
    h = borwein_fibered()
    m = mahler_mixed(h)
    assert abs(m.value - 0.15041) < 1e-4
    assert abs(m.value - 0.5 * (m.parts[0].value + m.parts[1].value)) < 1e-12
    assert m.parts[0].kronecker and m.parts[0].value == 0.0
    assert m.value < mahler_t1(LEHMER).value


def test_mixed_identical_fibers():
    G = make_group([3])
    p = lp(LEHMER)
    m = mahler_mixed(FiberedPoly(1, G, {x: p for x in G.elements}))
    assert m.value == pytest.approx(mahler_t1(p).value, abs=1e-15)
    two = FiberedPoly(1, make_group([2]), {(0,): lp([-2, 1]), (1,): lp([-2, 1])})
    assert mahler_mixed(two).value == pytest.approx(math.log(2), abs=1e-14)


def test_mixed_zero_fiber():
    h = FiberedPoly(1, make_group([2]), {(0,): lp([1, 1])})
    assert mahler_mixed(h).neg_infinity


def test_mixed_two_variables_uses_grid():
    G = make_group([2])
    h = FiberedPoly(2, G, {(0,): ONE_X_Y, (1,): ONE_X_Y})
    m = mahler_mixed(h, grid=512)
    assert m.method == "grid"
    assert m.value == pytest.approx(mahler_tk_grid(ONE_X_Y, 512).value, abs=1e-15)


def test_mixed_against_quadrature_oracle():
    f, g = BORWEIN_F, BORWEIN_G + (0,) * 4
    plus = [a + b for a, b in zip(f, g)]
    minus = [a - b for a, b in zip(f, g)]
    oracle = 0.5 * (trapezoid_log_measure(plus, 1 << 18) + trapezoid_log_measure(minus, 1 << 18))
    assert mahler_mixed(borwein_fibered()).value == pytest.approx(oracle, abs=1e-3)


def test_fibered_rejects_bad_element():
    with pytest.raises(ValueError):
        FiberedPoly(1, make_group([2]), {(2,): lp([1])})


def test_laurent_json_round_trip():
    p = LaurentPoly(2, {(-1, 3): 4, (0, 0): -7})
    assert LaurentPoly.from_json(2, p.to_json()) == p


def test_grid_matches_closed_form_for_1_x_y():
    # m(1 + x + y) = (3 sqrt 3 / 4 pi) L(2, chi_-3)
    L = math.fsum(1 / (3 * k + 1) ** 2 - 1 / (3 * k + 2) ** 2 for k in range(200_000))
    exact = 3 * math.sqrt(3) / (4 * math.pi) * L
    assert mahler_tk_grid(ONE_X_Y, 1024).value == pytest.approx(exact, abs=1e-6)
