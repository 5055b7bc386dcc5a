"""Finite abelian groups Z/n_1 + ... + Z/n_r, their elements and characters.

Elements and characters are both plain tuples of residues.  The pairing
between a character index ``k`` and an element ``j`` is the exponent ``e``
with chi_k(j) = zeta_N**e, where N is the group exponent.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

GroupElement = tuple[int, ...]
Character = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]
    order: int = field(init=False, compare=False)
    exponent: int = field(init=False, compare=False)

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        for n in factors:
            if n < 2:
                raise ValueError(f"group factor must be >= 2, got {n}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "order", math.prod(factors))
        object.__setattr__(self, "exponent", reduce(math.lcm, factors, 1))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.factors) <= 1

    def spec_string(self) -> str:
        return ",".join(str(n) for n in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "Z/1"
        return " + ".join(f"Z/{n}" for n in self.factors)

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(itertools.product(*(range(n) for n in self.factors)))

    @cached_property
    def _index(self) -> dict[GroupElement, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def index_of(self, x: Sequence[int]) -> int:
        """Position of ``x`` in the canonical (row-major) order."""
        return self._index[tuple(x)]

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and all(0 <= j < n for j, n in zip(x, self.factors))

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x: GroupElement) -> GroupElement:
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scale(self, c: int, x: GroupElement) -> GroupElement:
        return tuple((c * a) % n for a, n in zip(x, self.factors))

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def element_order(self, x: GroupElement) -> int:
        return reduce(math.lcm, (n // math.gcd(a, n) for a, n in zip(x, self.factors)), 1)


def make_group(factors: Iterable[int]) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(factors))


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse a comma-separated factor list ("2,2"); the empty string is Z/1."""
    text = text.strip()
    if not text:
        return make_group([])
    factors = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            n = int(tok)
        except ValueError:
            raise ValueError(f"bad group factor {tok!r}") from None
        if n < 2:
            raise ValueError(f"bad group factor {tok!r}: must be >= 2")
        factors.append(n)
    return make_group(factors)


def pairing(G: FiniteAbelianGroup, chi: Sequence[int], x: Sequence[int]) -> int:
    N = G.exponent
    return sum((N // n) * k * j for n, k, j in zip(G.factors, chi, x)) % N


def enumerate_elements(G: FiniteAbelianGroup) -> list[GroupElement]:
    return list(G.elements)


def enumerate_characters(G: FiniteAbelianGroup) -> list[Character]:
    # The dual of Z/n_1 + ... + Z/n_r is indexed by the same residue vectors.
    return list(G.elements)


def subgroup_closure(G: FiniteAbelianGroup, gens: Iterable[GroupElement]) -> frozenset[GroupElement]:
    H = {G.identity}
    frontier = [G.identity]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                y = G.add(h, g)
                if y not in H:
                    H.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(H)


def is_subgroup(G: FiniteAbelianGroup, H: Iterable[GroupElement]) -> bool:
    H = set(H)
    if G.identity not in H:
        return False
    return all(G.add(a, b) in H for a in H for b in H)


def coset_representatives(G: FiniteAbelianGroup, H: Iterable[GroupElement]) -> list[GroupElement]:
    """Lexicographically smallest member of every coset x + H, in order."""
    H = frozenset(tuple(h) for h in H)
    if not is_subgroup(G, H):
        raise ValueError("H is not a subgroup (not closed under addition)")
    seen: set[GroupElement] = set()
    reps = []
    for x in G.elements:
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.add(x, h) for h in H)
    return reps


def annihilator(G: FiniteAbelianGroup, H: Iterable[GroupElement]) -> frozenset[Character]:
    H = list(H)
    return frozenset(chi for chi in G.elements if all(pairing(G, chi, h) == 0 for h in H))


def all_subgroups(G: FiniteAbelianGroup) -> list[frozenset[GroupElement]]:
    """Every subgroup, found as closures of at most ``rank`` generators."""
    found: set[frozenset[GroupElement]] = set()
    for r in range(G.rank + 1):
        for gens in itertools.combinations(G.elements, r):
            found.add(subgroup_closure(G, gens))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def automorphisms(G: FiniteAbelianGroup, limit: int | None = None) -> list[tuple[GroupElement, ...]]:
    """Automorphisms given by the images of the standard generators e_1..e_r.

    Enumeration stops after ``limit`` automorphisms when one is given; the
    identity always comes first.
    """
    r = G.rank
    if r == 0:
        return [()]
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    # generator i must map into the n_i-torsion
    choices = [[y for y in G.elements if n % G.element_order(y) == 0] for n in G.factors]
    out = [tuple(basis)]
    for images in itertools.product(*choices):
        if list(images) == basis:
            continue
        if _is_bijective(G, images):
            out.append(tuple(images))
            if limit is not None and len(out) >= limit:
                break
    return out


def apply_hom(G: FiniteAbelianGroup, images: Sequence[GroupElement], x: GroupElement) -> GroupElement:
    acc = [0] * G.rank
    for xi, y in zip(x, images):
        for t in range(G.rank):
            acc[t] += xi * y[t]
    return tuple(a % n for a, n in zip(acc, G.factors))


def _is_bijective(G: FiniteAbelianGroup, images: Sequence[GroupElement]) -> bool:
    seen = set()
    for x in G.elements:
        y = apply_hom(G, images, x)
        if y in seen:
            return False
        seen.add(y)
    return True
