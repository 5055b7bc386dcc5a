"""Exact integer polynomials, cyclotomic polynomials, resultants and Z[x]/Phi_N.

Python ints are the arbitrary precision integers; nothing here ever rounds.
Polynomials are dense, ascending-exponent, with no trailing zeros.
"""
from __future__ import annotations

import math
import sys
import threading
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPoly":
        return cls((0,) * n + (c,))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self), len(other))
        return IntPoly(self[i] - other[i] for i in range(n))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        out = IntPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                parts.append(("-" if a < 0 else "+") + mono)
            else:
                parts.append(f"{a:+d}{mono}")
        s = "".join(reversed(parts))
        return s[1:] if s.startswith("+") else s


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def parse_poly(text: str) -> IntPoly:
    """Parse ascending comma-separated coefficients, e.g. "1,1,0,-1"."""
    vals = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            vals.append(int(tok))
        except ValueError:
            raise ValueError(f"bad polynomial coefficient {tok!r}") from None
    return IntPoly(vals)


def divmod_monic(P: IntPoly, D: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder of P by a divisor with leading coefficient +-1."""
    if D.is_zero() or abs(D.lc) != 1:
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(P.coeffs)
    d = D.degree
    if len(r) <= d:
        return IntPoly(), P
    q = [0] * (len(r) - d)
    dc = D.coeffs
    s = D.lc
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i] * s
        if c:
            q[i - d] = c
            for j in range(d + 1):
                r[i - d + j] -= c * dc[j]
    return IntPoly(q), IntPoly(r[:d])


def exact_div(P: IntPoly, D: IntPoly) -> IntPoly:
    q, r = divmod_monic(P, D)
    if r:
        raise ArithmeticError(f"{D} does not divide {P}")
    return q


def pseudo_rem(A: IntPoly, B: IntPoly) -> IntPoly:
    """lc(B)**(deg A - deg B + 1) * A  mod  B, computed over Z."""
    r = list(A.coeffs)
    db, lb = B.degree, B.lc
    e = A.degree - db + 1
    bc = B.coeffs
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * a for a in r]
        for j in range(db + 1):
            r[shift + j] -= c * bc[j]
        e -= 1
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        f = lb ** e
        r = [f * a for a in r]
    return IntPoly(r)


def resultant(P: IntPoly, Q: IntPoly) -> int:
    """Resultant over Z by the fraction-free subresultant PRS."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    A, B = P, Q
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * B.lc ** A.degree
    a = A.content()
    b = B.content()
    A = IntPoly(x // a for x in A.coeffs)
    B = IntPoly(x // b for x in B.coeffs)
    t = a ** B.degree * b ** A.degree
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_rem(A, B)
        if R.is_zero():
            return 0
        A = B
        div = g * h ** delta
        B = IntPoly(_exact_int_div(x, div) for x in R.coeffs)
        g = A.lc
        h = _exact_int_div(g ** delta, h ** (delta - 1)) if delta else h
        if B.degree == 0:
            h = _exact_int_div(B.lc ** A.degree, h ** (A.degree - 1))
            return s * t * h


def _exact_int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("non-exact division in subresultant PRS")
    return q


_cyclo_cache: dict[int, IntPoly] = {}
_cyclo_lock = threading.Lock()


def cyclotomic(n: int) -> IntPoly:
    """Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, memoized."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    P = _cyclo_cache.get(n)
    if P is not None:
        return P
    with _cyclo_lock:
        return _cyclotomic_locked(n)


def _cyclotomic_locked(n: int) -> IntPoly:
    P = _cyclo_cache.get(n)
    if P is None:
        P = IntPoly.monomial(n) - IntPoly.const(1)
        for d in divisors(n)[:-1]:
            P = exact_div(P, _cyclotomic_locked(d))
        _cyclo_cache[n] = P
    return P


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@dataclass(frozen=True)
class CycloElem:
    """An element of Z[x]/Phi_N, read as a polynomial in a primitive N-th root of unity."""

    N: int
    rep: tuple[int, ...]

    @classmethod
    def from_poly(cls, N: int, P: IntPoly | Sequence[int]) -> "CycloElem":
        coeffs = P.coeffs if isinstance(P, IntPoly) else tuple(P)
        return cls(N, _reduce(N, coeffs))

    @classmethod
    def const(cls, N: int, c: int) -> "CycloElem":
        return cls(N, _strip((c,)))

    def is_zero(self) -> bool:
        return not self.rep

    @property
    def degree(self) -> int:
        return len(self.rep) - 1

    def is_integer(self) -> bool:
        return len(self.rep) <= 1

    def to_int(self) -> int:
        if len(self.rep) > 1:
            raise ValueError("element is not a rational integer")
        return self.rep[0] if self.rep else 0

    def __mul__(self, other: "CycloElem") -> "CycloElem":
        return cyclo_mul(self, other)

    def __add__(self, other: "CycloElem") -> "CycloElem":
        _check_conductor(self, other)
        n = max(len(self.rep), len(other.rep))
        return CycloElem(self.N, _strip(_at(self.rep, i) + _at(other.rep, i) for i in range(n)))

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.N, tuple(-a for a in self.rep))

    def __sub__(self, other: "CycloElem") -> "CycloElem":
        return self + (-other)

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.N), math.sin(2 * math.pi / self.N))
        return eval_complex(IntPoly(self.rep), z)


def _at(t: Sequence[int], i: int) -> int:
    return t[i] if i < len(t) else 0


def _check_conductor(a: CycloElem, b: CycloElem) -> None:
    if a.N != b.N:
        raise ValueError(f"conductor mismatch: {a.N} vs {b.N}")


def _reduce(N: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    phi = cyclotomic(N).coeffs
    d = len(phi) - 1
    r = list(coeffs)
    # Phi_N is monic, so plain long division stays in Z.
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c:
            for j in range(d + 1):
                r[i - d + j] -= c * phi[j]
    return _strip(r[:d])


def cyclo_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    _check_conductor(a, b)
    return CycloElem(a.N, _reduce(a.N, _mul(a.rep, b.rep)))


def cyclo_from_exponents(N: int, terms: Iterable[tuple[int, int]]) -> CycloElem:
    """Sum of c * zeta_N**e over (e, c) pairs, reduced mod Phi_N."""
    acc = [0] * N
    for e, c in terms:
        acc[e % N] += c
    return CycloElem(N, _reduce(N, acc))


_EPS = sys.float_info.epsilon / 2


def eval_complex(P: IntPoly | Sequence[int], z: complex) -> complex:
    """Horner evaluation in double precision.

    The absolute error is at most ``horner_error_bound(P, z)``, i.e.
    gamma_{2n} * sum |a_i| |z|^i with gamma_k = k u / (1 - k u).
    """
    coeffs = P.coeffs if isinstance(P, IntPoly) else P
    acc = 0j
    for a in reversed(coeffs):
        acc = acc * z + a
    return acc


def horner_error_bound(P: IntPoly | Sequence[int], z: complex) -> float:
    coeffs = P.coeffs if isinstance(P, IntPoly) else P
    n = max(len(coeffs) - 1, 1)
    r = abs(z)
    s = 0.0
    for a in reversed(coeffs):
        s = s * r + abs(float(a))
    k = 4 * n + 2  # complex multiply-add costs a few extra roundings
    return k * _EPS / (1 - k * _EPS) * s


def derivative(P: IntPoly) -> IntPoly:
    return IntPoly(i * a for i, a in enumerate(P.coeffs) if i)


def primitive_part(P: IntPoly) -> IntPoly:
    """P divided by its content, normalised to a positive leading coefficient."""
    c = P.content()
    if c == 0:
        return P
    if P.lc < 0:
        c = -c
    return IntPoly(a // c for a in P.coeffs)


def divide_exact(P: IntPoly, D: IntPoly) -> IntPoly:
    """P / D for any nonzero D, raising unless the quotient lies in Z[x]."""
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(P.coeffs)
    d, ld = D.degree, D.lc
    if len(r) <= d:
        if r:
            raise ArithmeticError(f"{D} does not divide {P}")
        return IntPoly()
    q = [0] * (len(r) - d)
    for i in range(len(r) - 1, d - 1, -1):
        c, rem = divmod(r[i], ld)
        if rem:
            raise ArithmeticError(f"{D} does not divide {P}")
        if c:
            q[i - d] = c
            for j in range(d + 1):
                r[i - d + j] -= c * D.coeffs[j]
    if any(r[:d]):
        raise ArithmeticError(f"{D} does not divide {P}")
    return IntPoly(q)


def poly_gcd(A: IntPoly, B: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    if A.is_zero():
        return primitive_part(B)
    if B.is_zero():
        return primitive_part(A)
    A, B = primitive_part(A), primitive_part(B)
    if A.degree < B.degree:
        A, B = B, A
    while not B.is_zero():
        R = pseudo_rem(A, B)
        A, B = B, (primitive_part(R) if R else R)
    return primitive_part(A)


def squarefree_decomposition(P: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """(c, [(a_i, i), ...]) with P = c * prod a_i^i, a_i primitive and squarefree.

    Yun's algorithm; factors of degree 0 are dropped.
    """
    if P.is_zero():
        raise ValueError("zero polynomial")
    f = primitive_part(P)
    c = P.lc // f.lc
    out = []
    if f.degree < 1:
        return c, out
    a0 = poly_gcd(f, derivative(f))
    b = divide_exact(f, a0)
    cc = divide_exact(derivative(f), a0)
    d = cc - derivative(b)
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = divide_exact(b, a)
        cc = divide_exact(d, a)
        d = cc - derivative(b)
        if a.degree > 0:
            out.append((a, i))
        i += 1
    # leftover unit from normalisation
    prod = IntPoly.const(1)
    for a, m in out:
        prod = prod * a ** m
    c = c * f.lc // prod.lc
    return c, out
