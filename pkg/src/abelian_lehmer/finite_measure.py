"""Exact logarithmic Mahler measure over a finite abelian group.

For f in Z[F^], m(f) = (1/|F|) log |N(f)| where N(f) = prod_{x in F} f(x) is a
rational integer.  The product is formed in Z[x]/Phi_N (N the exponent of F)
and the fact that it collapses to a constant is checked on every call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .exactpoly import (CycloElem, IntPoly, cyclo_from_exponents, cyclo_mul, cyclotomic,
                        resultant)
from .groups import (Character, FiniteAbelianGroup, GroupElement, coset_representatives,
                     make_group, pairing)


class GaloisCertificateError(AssertionError):
    """The product of values did not reduce to a rational integer."""


@dataclass(frozen=True)
class CharPoly:
    """An integral combination of characters, sum a_chi * chi."""

    group: FiniteAbelianGroup
    coeffs: Mapping[Character, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for chi, a in dict(self.coeffs).items():
            chi = tuple(chi)
            if not self.group.contains(chi):
                raise ValueError(f"character {chi} not valid for {self.group}")
            if a:
                clean[chi] = int(a)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_vector(cls, group: FiniteAbelianGroup, vec: Sequence[int]) -> "CharPoly":
        """Coefficients listed in canonical character order."""
        if len(vec) != group.order:
            raise ValueError(f"expected {group.order} coefficients, got {len(vec)}")
        return cls(group, dict(zip(group.elements, (int(a) for a in vec))))

    def to_vector(self) -> list[int]:
        return [self.coeffs.get(chi, 0) for chi in self.group.elements]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, CharPoly) and self.group == other.group
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, tuple(self.to_vector())))

    def __repr__(self):
        return f"CharPoly({self.group.spec_string()!r}, {self.to_vector()})"


# -- measure values ---------------------------------------------------------

@dataclass(frozen=True)
class NegInfinity:
    def __float__(self) -> float:
        return -math.inf


@dataclass(frozen=True)
class Exact:
    """m = log(norm_abs) / order, held exactly."""

    norm_abs: int
    order: int

    def __post_init__(self):
        if self.norm_abs < 1 or self.order < 1:
            raise ValueError("Exact needs norm_abs >= 1 and order >= 1")

    def __float__(self) -> float:
        return math.log(self.norm_abs) / self.order

    def is_zero(self) -> bool:
        return self.norm_abs == 1

    def __str__(self):
        return f"(1/{self.order}) log {self.norm_abs}"


@dataclass(frozen=True)
class Numeric:
    value: float
    err_bound: float

    def __float__(self) -> float:
        return self.value


MeasureValue = Union[NegInfinity, Exact, Numeric]


def compare_measure(a: MeasureValue, b: MeasureValue) -> int:
    """Exact three-way comparison; returns -1, 0 or 1."""
    if isinstance(a, Numeric) or isinstance(b, Numeric):
        raise TypeError("refusing to order a Numeric measure against an exact one")
    if isinstance(a, NegInfinity):
        return 0 if isinstance(b, NegInfinity) else -1
    if isinstance(b, NegInfinity):
        return 1
    lhs = a.norm_abs ** b.order
    rhs = b.norm_abs ** a.order
    return (lhs > rhs) - (lhs < rhs)


def measure_equal(a: MeasureValue, b: MeasureValue) -> bool:
    return compare_measure(a, b) == 0


# -- norms ------------------------------------------------------------------

@dataclass(frozen=True)
class NormCertificate:
    value: int
    residual_degree: int
    float_shadow: float


@dataclass(frozen=True)
class Vanishes:
    """f has an exact zero at ``at``."""

    at: GroupElement


def value_at(f: CharPoly, x: GroupElement) -> CycloElem:
    G = f.group
    return cyclo_from_exponents(G.exponent, ((pairing(G, chi, x), a) for chi, a in f.coeffs.items()))


def _value_complex(f: CharPoly, x: GroupElement) -> complex:
    G = f.group
    N = G.exponent
    s = 0j
    for chi, a in f.coeffs.items():
        e = pairing(G, chi, x)
        s += a * complex(math.cos(2 * math.pi * e / N), math.sin(2 * math.pi * e / N))
    return s


def _norm_over(f: CharPoly, points: Iterable[GroupElement]) -> NormCertificate | Vanishes:
    N = f.group.exponent
    acc = CycloElem.const(N, 1)
    shadow = 1.0
    for x in points:
        v = value_at(f, x)
        if v.is_zero():
            return Vanishes(x)
        acc = cyclo_mul(acc, v)
        shadow *= abs(_value_complex(f, x))
    if acc.degree > 0:
        raise GaloisCertificateError(
            f"product of values has residual degree {acc.degree} for {f!r}")
    return NormCertificate(acc.to_int(), 0, shadow)


def norm_integer(f: CharPoly) -> NormCertificate | Vanishes:
    """prod_{x in F} f(x) as an exact integer, or Vanishes if some value is 0."""
    return _norm_over(f, f.group.elements)


def mahler_finite(f: CharPoly) -> NegInfinity | Exact:
    if f.is_zero():
        raise ValueError("Mahler measure of the zero combination")
    cert = norm_integer(f)
    if isinstance(cert, Vanishes):
        return NegInfinity()
    return Exact(abs(cert.value), f.group.order)


def quotient_measure(f: CharPoly, H: Iterable[GroupElement]) -> NegInfinity | Exact:
    """Measure of f viewed on G/H, for f supported on the annihilator of H.

    Such f is constant on cosets, so it is evaluated once per coset
    representative and normalised by |G/H|.
    """
    G = f.group
    H = list(H)
    for chi in f.coeffs:
        if any(pairing(G, chi, h) for h in H):
            raise ValueError(f"character {chi} is not trivial on H")
    if f.is_zero():
        raise ValueError("Mahler measure of the zero combination")
    reps = coset_representatives(G, H)
    cert = _norm_over(f, reps)
    if isinstance(cert, Vanishes):
        return NegInfinity()
    return Exact(abs(cert.value), len(reps))


def resultant_norm_cyclic(n: int, f: CharPoly) -> int:
    """Res(sum a_k x^k, x^n - 1); equals (-1)^(n deg F) times the norm."""
    if f.group.factors != (n,):
        raise ValueError(f"expected the cyclic group Z/{n}")
    F = IntPoly(f.to_vector())
    if F.is_zero():
        return 0
    return resultant(F, IntPoly.monomial(n) - IntPoly.const(1))


# -- witnesses ----------------------------------------------------------------

def delta_witness(F: FiniteAbelianGroup) -> CharPoly:
    """sum of all characters minus the trivial one: |F|-1 at 0, -1 elsewhere."""
    if F.order < 3:
        raise ValueError("needs |F| >= 3")
    vec = [1] * F.order
    vec[0] = 0
    return CharPoly.from_vector(F, vec)


def rho(n: int) -> int:
    """Smallest prime not dividing n."""
    if n < 2:
        raise ValueError("rho(n) needs n >= 2")
    p = 2
    while n % p == 0:
        p += 1
        while any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            p += 1
    return p


def cyclotomic_witness(n: int) -> CharPoly:
    """Phi_p folded onto Z/n, p the smallest prime not dividing n.

    Its values are Phi_p(zeta_n^j), so the norm is Res(Phi_p, x^n - 1) = p.
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    p = rho(n)
    vec = [0] * n
    for m, c in enumerate(cyclotomic(p).coeffs):
        vec[m % n] += c
    return CharPoly.from_vector(make_group([n]), vec)


def pullback_cyclic(f: CharPoly, n: int) -> CharPoly:
    """Pull f on Z/m back along Z/n -> Z/m (m | n): chi_k -> chi_{k n/m}."""
    if f.group.rank > 1:
        raise ValueError("pullback_cyclic needs a cyclic presentation")
    m = f.group.order
    if n % m:
        raise ValueError(f"{m} does not divide {n}")
    if n == 1:
        return CharPoly(make_group([]), dict(f.coeffs))
    G = make_group([n])
    return CharPoly(G, {(((chi[0] if chi else 0) * (n // m)) % n,): a for chi, a in f.coeffs.items()})
