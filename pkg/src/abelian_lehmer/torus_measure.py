"""Mahler measure on the circle, on tori T^k, and on mixed groups T^k + F.

On T the measure comes from Jensen's formula,
    m(p) = log|lc| + sum log max(1, |root|),
with roots found by Aberth iteration after all cyclotomic factors have been
divided out exactly.  Whether m(p) = 0 is decided by exact division
(Kronecker), never by looking at a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactpoly import (IntPoly, cyclotomic, divmod_monic, eval_complex, horner_error_bound,
                        squarefree_decomposition)
from .groups import FiniteAbelianGroup, GroupElement

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class LaurentPoly:
    k: int
    terms: Mapping[Exponent, int]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("a Laurent polynomial needs k >= 1 variables")
        clean: dict[Exponent, int] = {}
        for e, c in dict(self.terms).items():
            e = (e,) if isinstance(e, int) else tuple(int(v) for v in e)
            if len(e) != self.k:
                raise ValueError(f"exponent {e} has the wrong length for k={self.k}")
            clean[e] = clean.get(e, 0) + int(c)
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int] | IntPoly, shift: int = 0) -> "LaurentPoly":
        """Univariate polynomial from ascending coefficients (times x^shift)."""
        return cls(1, {(i + shift,): int(c) for i, c in enumerate(coeffs) if c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(self.k, t)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        t: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly(self.k, t)

    def to_intpoly(self) -> tuple[IntPoly, int]:
        """(P, a) with self = x^a * P and P(0) != 0; univariate only."""
        if self.k != 1:
            raise ValueError("to_intpoly needs a univariate polynomial")
        if not self.terms:
            return IntPoly(), 0
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        coeffs = [0] * (hi - lo + 1)
        for (e,), c in self.terms.items():
            coeffs[e - lo] = c
        return IntPoly(coeffs), lo

    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, k: int, terms: Iterable) -> "LaurentPoly":
        return cls(k, {tuple(e): c for e, c in terms})


@dataclass(frozen=True)
class FiberedPoly:
    """A function on T^k + F given fiber by fiber: x in F -> Laurent polynomial."""

    k: int
    group: FiniteAbelianGroup
    fibers: Mapping[GroupElement, LaurentPoly]

    def __post_init__(self):
        fibers = {}
        for x, p in dict(self.fibers).items():
            x = tuple(x)
            if not self.group.contains(x):
                raise ValueError(f"{x} is not an element of {self.group}")
            if p.k != self.k:
                raise ValueError("all fibers must have the same number of variables")
            fibers[x] = p
        for x in self.group.elements:
            fibers.setdefault(x, LaurentPoly(self.k, {}))
        object.__setattr__(self, "fibers", fibers)


@dataclass(frozen=True)
class TorusMeasure:
    value: float
    err_bound: float
    method: str  # "jensen", "lawton" or "grid"
    kronecker: bool = False
    parts: tuple["TorusMeasure", ...] = field(default=(), repr=False)

    @property
    def neg_infinity(self) -> bool:
        return self.value == -math.inf


# -- cyclotomic factors -------------------------------------------------------

@lru_cache(maxsize=None)
def _indices_with_totient_at_most(D: int) -> tuple[int, ...]:
    # phi(d) >= sqrt(d / 2), so phi(d) <= D forces d <= 2 D^2
    top = 2 * D * D + 2
    phi = list(range(top + 1))
    for p in range(2, top + 1):
        if phi[p] == p:
            for m in range(p, top + 1, p):
                phi[m] -= phi[m] // p
    return tuple(d for d in range(1, top + 1) if phi[d] <= D)


def cyclotomic_factorization(P: IntPoly) -> tuple[dict[int, int], IntPoly]:
    """Divide out every cyclotomic factor of P (P(0) != 0 assumed).

    Returns ({d: multiplicity}, cofactor).  Candidate indices are screened by
    evaluating at exp(2 pi i / d) and then confirmed by exact division.
    """
    found: dict[int, int] = {}
    if P.degree < 1:
        return found, P
    for d in _indices_with_totient_at_most(P.degree):
        if P.degree < 1:
            break
        phi = cyclotomic(d)
        if phi.degree > P.degree:
            continue
        z = complex(math.cos(2 * math.pi / d), math.sin(2 * math.pi / d))
        if abs(eval_complex(P, z)) > 1e3 * horner_error_bound(P, z) + 1e-9:
            continue
        while P.degree >= phi.degree:
            q, r = divmod_monic(P, phi)
            if r:
                break
            found[d] = found.get(d, 0) + 1
            P = q
    return found, P


def is_kronecker(p: LaurentPoly) -> bool:
    """True iff p = +-x^a * (product of cyclotomic polynomials)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    P, _ = p.to_intpoly()
    _, rest = cyclotomic_factorization(P)
    return rest.degree == 0 and abs(rest.lc) == 1


# -- roots and Jensen -----------------------------------------------------------

def aberth_roots(P: IntPoly, tol: float = 1e-15, max_iter: int = 2000) -> np.ndarray:
    """All complex roots of P by simultaneous (Aberth-Ehrlich) iteration."""
    n = P.degree
    if n < 1:
        return np.zeros(0, dtype=complex)
    a = np.array([float(c) for c in reversed(P.coeffs)], dtype=complex)
    da = np.polyder(a)
    if n == 1:
        return np.array([-a[1] / a[0]])
    radius = (abs(a[-1]) / abs(a[0])) ** (1.0 / n) if a[-1] != 0 else 1.0
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4 / n)) * (1 + 0.01 * np.cos(k))
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polyval(a, z)
        dpz = np.polyval(da, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            corr = w / (1 - w * s)
        corr = np.where(np.isfinite(corr), corr, 0) * active
        z = z - corr
        active &= np.abs(corr) > tol * np.maximum(np.abs(z), 1e-300)
        if not active.any():
            break
    return z


def _relative_residual(P: IntPoly, z: complex) -> float:
    """|P(z)| / sum |a_i| |z|^i, the backward error of z as a root."""
    r = abs(z)
    scale = 0.0
    for a in reversed(P.coeffs):
        scale = scale * r + abs(float(a))
    return abs(eval_complex(P, z)) / scale if scale else 0.0


def _jensen_squarefree(P: IntPoly) -> tuple[float, float]:
    roots = aberth_roots(P)
    n = P.degree
    worst = max((_relative_residual(P, complex(z)) for z in roots), default=0.0)
    if worst >= 1e-12:
        raise ArithmeticError(f"root refinement stalled, relative residual {worst:.2e}")
    value = math.log(abs(P.lc))
    err = 0.0
    lc = float(P.lc)
    for i, z in enumerate(roots):
        r = abs(z)
        if r > 1:
            value += math.log(r)
        # Weierstrass inclusion disk: radius n |p(z_i) / (lc prod_{j != i} (z_i - z_j))|
        others = np.delete(roots, i)
        denom = lc * np.prod(z - others)
        rad = n * abs(eval_complex(P, complex(z)) / denom) if denom != 0 else math.inf
        if r + rad > 1:
            err += rad / max(r - rad, 1.0)
    err += 4 * n * np.finfo(float).eps * (abs(value) + 1)
    return value, float(err)


def _jensen(P: IntPoly) -> tuple[float, float]:
    c, parts = squarefree_decomposition(P)
    value, err = math.log(abs(c)), 0.0
    for a, mult in parts:
        v, e = _jensen_squarefree(a)
        value += mult * v
        err += mult * e
    return value, err


def mahler_t1(p: LaurentPoly | Sequence[int] | IntPoly) -> TorusMeasure:
    if not isinstance(p, LaurentPoly):
        p = LaurentPoly.from_coeffs(p)
    if p.k != 1:
        raise ValueError("mahler_t1 needs a univariate polynomial")
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    P, _ = p.to_intpoly()
    _, rest = cyclotomic_factorization(P)
    if rest.degree == 0:
        v = math.log(abs(rest.lc))
        return TorusMeasure(v, 0.0, "jensen", kronecker=abs(rest.lc) == 1)
    value, err = _jensen(rest)
    return TorusMeasure(value, err, "jensen")


# -- several variables ----------------------------------------------------------

def lawton_specialize(p: LaurentPoly, r: Sequence[int]) -> LaurentPoly:
    """Substitute x_i -> x^{r_i} and collect terms."""
    if len(r) != p.k:
        raise ValueError(f"need {p.k} exponents, got {len(r)}")
    t: dict[Exponent, int] = {}
    for e, c in p.terms.items():
        d = sum(ei * ri for ei, ri in zip(e, r))
        t[(d,)] = t.get((d,), 0) + c
    return LaurentPoly(1, t)


def lawton_vector(k: int, d: int) -> tuple[int, ...]:
    return tuple(d ** i for i in range(k))


def mahler_lawton(p: LaurentPoly, d: int) -> TorusMeasure:
    q = lawton_specialize(p, lawton_vector(p.k, d))
    if q.is_zero():
        raise ValueError(f"specialization with d={d} cancels every term")
    m = mahler_t1(q)
    return TorusMeasure(m.value, m.err_bound, "lawton", kronecker=m.kronecker)


def _grid_average(p: LaurentPoly, M: int, offset: float) -> float:
    s = (np.arange(M) + offset) / M
    shape = (M,) * p.k
    total = np.zeros(shape, dtype=complex)
    for e, c in p.terms.items():
        term = np.array(float(c), dtype=complex)
        for ei in e:
            term = np.multiply.outer(term, np.exp(2j * np.pi * ei * s))
        total += term
    mag = np.abs(total)
    if (mag < 1e-300).any():
        raise ZeroDivisionError("grid point hits a zero")
    return float(np.log(mag).mean())


def mahler_tk_grid(p: LaurentPoly, M: int = 256) -> TorusMeasure:
    """Average of log|p| on the half-offset grid ((j + 1/2)/M)^k.

    The error estimate is the change between resolutions M and M/2.
    """
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if p.k > 3:
        raise ValueError("grid quadrature supports k <= 3")
    if M < 8:
        raise ValueError("grid resolution must be >= 8")
    for offset in (0.5, 1 / 3, 0.25):
        try:
            fine = _grid_average(p, M, offset)
            coarse = _grid_average(p, M // 2, offset)
        except ZeroDivisionError:
            continue
        return TorusMeasure(fine, abs(fine - coarse), "grid")
    raise ValueError(f"every grid offset at resolution {M} hits a zero of p")


# -- mixed groups ------------------------------------------------------------------

def mahler_mixed(h: FiberedPoly, grid: int = 256) -> TorusMeasure:
    """(1/|F|) * sum over x in F of the torus measure of the fiber at x."""
    parts = []
    for x in h.group.elements:
        fib = h.fibers[x]
        if fib.is_zero():
            return TorusMeasure(-math.inf, 0.0, "jensen" if h.k == 1 else "grid")
        if h.k == 1:
            parts.append(mahler_t1(fib))
        else:
            parts.append(mahler_tk_grid(fib, grid))
    n = h.group.order
    value = math.fsum(m.value for m in parts) / n
    err = math.fsum(m.err_bound for m in parts) / n
    return TorusMeasure(value, err, parts[0].method, kronecker=all(m.kronecker for m in parts),
                        parts=tuple(parts))


# -- named polynomials ---------------------------------------------------------

LEHMER = (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
BORWEIN_F = (1, -1, 1, -1, 0, 0, -1, 0, 0, -1, 1, -1, 1)
BORWEIN_G = (0, 0, 0, 0, 1, -1, 1, -1, 1)


def borwein_fibered() -> FiberedPoly:
    """h(s, j) = f(e^{2 pi i s}) + (-1)^j g(e^{2 pi i s}) on T + Z/2."""
    from .groups import make_group
    f = LaurentPoly.from_coeffs(BORWEIN_F)
    g = LaurentPoly.from_coeffs(BORWEIN_G)
    return FiberedPoly(1, make_group([2]), {(0,): f + g, (1,): f - g})
