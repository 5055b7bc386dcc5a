"""Bounded exhaustive search for the Lehmer constant of a finite abelian group.

Candidates are coefficient vectors in [-B, B]^|F|, listed in canonical
character order.  Coefficient values are ranked

    1 < -1 < 2 < -2 < ... < B < -B < 0

and vectors are compared lexicographically under that ranking; the canonical
form of f is the least vector in its orbit under sign change, multiplication
by a character and automorphisms of F.  Candidate number ``i`` is the vector
whose base-(2B+1) digits (most significant first) are the ranks of its
coefficients, so the lexicographic key of a vector *is* its index.

Evaluation is two-phase: |N(f)| is estimated in floating point with an FFT
over the group, and only candidates whose estimate is within the screening
margin of the running minimum get an exact norm.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .finite_measure import CharPoly, Exact, Vanishes, compare_measure, norm_integer, rho
from .groups import FiniteAbelianGroup, apply_hom, automorphisms, make_group

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8
_MAX_EXACT_KEY = 2 ** 53


class BudgetExceeded(RuntimeError):
    pass


class ScreenAuditError(AssertionError):
    """A float screen estimate disagreed with the exact norm beyond the margin."""


@dataclass(frozen=True)
class SearchConfig:
    group: FiniteAbelianGroup
    bound: int
    shards: int = 1
    screen_margin: float | None = None  # defaults to 1e-6 * |F|
    budget: int = DEFAULT_BUDGET
    prune: bool = True
    threads: int = 1
    max_transforms: int = 256  # symmetry maps used for pruning (identity first)

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if self.shards < 1 or self.threads < 1:
            raise ValueError("shards and threads must be positive")

    @property
    def margin(self) -> float:
        if self.screen_margin is not None:
            return self.screen_margin
        return 1e-6 * self.group.order

    @property
    def space_size(self) -> int:
        return (2 * self.bound + 1) ** self.group.order


@dataclass(frozen=True)
class SearchResult:
    min: Exact | None
    witness: CharPoly | None
    scanned: int
    pruned_by_symmetry: int
    exhaustive_within_bound: bool
    bound: int
    screened: int = 0
    confirmed: int = 0

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.witness.group if self.witness is not None else None


# -- symmetry ----------------------------------------------------------------------

def coefficient_key(a: int) -> tuple[bool, int, bool]:
    return (a == 0, abs(a), a < 0)


def vector_key(vec: Sequence[int]) -> tuple:
    return tuple(coefficient_key(a) for a in vec)


@lru_cache(maxsize=64)
def symmetry_permutations(G: FiniteAbelianGroup, limit: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Index permutations p with (sigma f)[i] = f[p[i]], for chi -> alpha(chi) + psi.

    The identity comes first, then the translations, then the remaining
    automorphisms composed with translations.  ``limit`` truncates the list.
    """
    elems = G.elements
    auts = automorphisms(G)
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for images in auts:
        for psi in elems:
            perm = tuple(G.index_of(G.add(apply_hom(G, images, chi), psi)) for chi in elems)
            if perm not in seen:
                seen.add(perm)
                out.append(perm)
                if limit is not None and len(out) >= limit:
                    return tuple(out)
    return tuple(out)


def orbit(f: CharPoly) -> set[tuple[int, ...]]:
    vec = f.to_vector()
    res = set()
    for perm in symmetry_permutations(f.group):
        v = tuple(vec[p] for p in perm)
        res.add(v)
        res.add(tuple(-a for a in v))
    return res


def canonicalize(f: CharPoly) -> CharPoly:
    """Least element of the orbit of f under sign, translation and automorphisms."""
    if f.is_zero():
        raise ValueError("cannot canonicalize the zero combination")
    best = min(orbit(f), key=vector_key)
    return CharPoly.from_vector(f.group, best)


# -- candidate enumeration -------------------------------------------------------------

def _rank_values(B: int) -> np.ndarray:
    vals = []
    for a in range(1, B + 1):
        vals += [a, -a]
    vals.append(0)
    return np.array(vals, dtype=np.int64)


def _neg_digits(B: int) -> np.ndarray:
    vals = list(_rank_values(B))
    return np.array([vals.index(-v) for v in vals], dtype=np.int64)


def candidate_vector(index: int, G: FiniteAbelianGroup, B: int) -> list[int]:
    base = 2 * B + 1
    vals = _rank_values(B)
    digits = []
    for _ in range(G.order):
        index, d = divmod(index, base)
        digits.append(int(vals[d]))
    return digits[::-1]


@dataclass
class _ShardOutcome:
    best: int | None = None
    best_indices: list[int] = field(default_factory=list)
    scanned: int = 0
    kept: int = 0
    screened: int = 0
    confirmed: int = 0


class _Searcher:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        G = cfg.group
        self.G = G
        self.n = G.order
        self.B = cfg.bound
        self.base = 2 * self.B + 1
        self.values = _rank_values(self.B)
        self.neg = _neg_digits(self.B)
        self.pow = self.base ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        self.margin = cfg.margin
        if cfg.prune:
            perms = symmetry_permutations(G, cfg.max_transforms)
            # key(sigma f) = sum_i d[p[i]] w_i = d @ W[:, sigma] with W[p[i], sigma] = w_i
            W = np.zeros((self.n, len(perms)))
            for s, perm in enumerate(perms):
                for i, p in enumerate(perm):
                    W[p, s] += float(self.pow[i])
            self.W = W
        else:
            self.W = None
        self.chunk = max(1024, (1 << 22) // (2 * (self.W.shape[1] if self.W is not None else 1)))

    def shard_ranges(self) -> list[tuple[int, int]]:
        lead = np.array_split(np.arange(self.base), self.cfg.shards)
        span = self.base ** (self.n - 1)
        return [(int(l[0]) * span, (int(l[-1]) + 1) * span) for l in lead if len(l)]

    def float_norms(self, coeffs: np.ndarray) -> np.ndarray:
        if self.G.rank == 0:
            return np.abs(coeffs[:, 0]).astype(float)
        arr = coeffs.reshape((len(coeffs),) + self.G.factors).astype(float)
        vals = np.fft.fftn(arr, axes=tuple(range(1, self.G.rank + 1)))
        return np.abs(vals).reshape(len(coeffs), -1).prod(axis=1)

    def run(self, lo: int, hi: int) -> _ShardOutcome:
        out = _ShardOutcome()
        low_cut = 2.0 * (1 - self.margin)
        for start in range(lo, hi, self.chunk):
            stop = min(hi, start + self.chunk)
            idx = np.arange(start, stop, dtype=np.int64)
            out.scanned += len(idx)
            digits = (idx[:, None] // self.pow[None, :]) % self.base
            if self.W is not None:
                kpos = (digits.astype(float) @ self.W).min(axis=1)
                kneg = (self.neg[digits].astype(float) @ self.W).min(axis=1)
                keep = idx.astype(float) <= np.minimum(kpos, kneg)
                idx, digits = idx[keep], digits[keep]
            out.kept += len(idx)
            if not len(idx):
                continue
            fn = self.float_norms(self.values[digits])
            ok = fn >= low_cut
            if not ok.any():
                continue
            ceiling = fn[ok].min()
            if out.best is not None:
                ceiling = min(ceiling, float(out.best))
            sel = ok & (fn <= ceiling * (1 + self.margin))
            out.screened += int(sel.sum())
            for i, est in zip(idx[sel].tolist(), fn[sel].tolist()):
                vec = candidate_vector(i, self.G, self.B)
                cert = norm_integer(CharPoly.from_vector(self.G, vec))
                out.confirmed += 1
                exact = 0 if isinstance(cert, Vanishes) else abs(cert.value)
                if abs(exact - est) > self.margin * max(exact, 1):
                    raise ScreenAuditError(
                        f"float screen {est!r} vs exact norm {exact} for {vec}")
                if exact < 2:
                    continue
                if out.best is None or exact < out.best:
                    out.best, out.best_indices = exact, [i]
                elif exact == out.best:
                    out.best_indices.append(i)
        return out


def search_lambda(cfg: SearchConfig) -> SearchResult:
    """Least positive measure over coefficient vectors in [-B, B]^|F|."""
    total = cfg.space_size
    if total > cfg.budget or total >= _MAX_EXACT_KEY:
        raise BudgetExceeded(
            f"search space (2*{cfg.bound}+1)^{cfg.group.order} = {total} exceeds budget {cfg.budget}")
    s = _Searcher(cfg)
    ranges = s.shard_ranges()
    if cfg.threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outcomes = list(pool.map(lambda r: s.run(*r), ranges))
    else:
        outcomes = [s.run(lo, hi) for lo, hi in ranges]

    best = min((o.best for o in outcomes if o.best is not None), default=None)
    screened = sum(o.screened for o in outcomes)
    confirmed = sum(o.confirmed for o in outcomes)
    if screened != confirmed:
        raise ScreenAuditError(f"{screened} candidates passed the screen but {confirmed} were confirmed")
    scanned = sum(o.scanned for o in outcomes)
    kept = sum(o.kept for o in outcomes)
    witness = None
    if best is not None:
        tied = [i for o in outcomes if o.best == best for i in o.best_indices]
        forms = {tuple(canonicalize(CharPoly.from_vector(cfg.group, candidate_vector(i, cfg.group, cfg.bound))).to_vector())
                 for i in tied}
        witness = CharPoly.from_vector(cfg.group, min(forms, key=vector_key))
    result = SearchResult(
        min=Exact(best, cfg.group.order) if best is not None else None,
        witness=witness,
        scanned=scanned,
        pruned_by_symmetry=scanned - kept,
        exhaustive_within_bound=True,
        bound=cfg.bound,
        screened=screened,
        confirmed=confirmed,
    )
    log.info("search %s B=%d: min %s witness %s (%d scanned, %d pruned, %d confirmed)",
             cfg.group.spec_string() or "1", cfg.bound, result.min,
             witness.to_vector() if witness else None, scanned, result.pruned_by_symmetry, confirmed)
    return result


# -- bounds and conjectures -------------------------------------------------------

def conjectured_cyclic_lambda(n: int) -> Exact:
    return Exact(rho(n), n)


def finite_upper_bound(F: FiniteAbelianGroup | int) -> Exact:
    order = F if isinstance(F, int) else F.order
    if order < 3:
        raise ValueError("the upper bound needs |F| >= 3")
    return Exact(order - 1, order)


def quotient_bound_decay(orders: Sequence[int]) -> list[Exact]:
    """Upper bounds (1/m) log(m - 1) for growing finite quotients of order m."""
    orders = list(orders)
    if any(m < 3 for m in orders) or any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("orders must be >= 3 and strictly increasing")
    return [finite_upper_bound(m) for m in orders]


AGREES = "AGREES"
BELOW = "BELOW"
ABOVE = "ABOVE"
BOUND_ONLY = "BOUND_ONLY"


@dataclass(frozen=True)
class BoundsReport:
    group: FiniteAbelianGroup
    rho: int | None
    conjectured: Exact | None
    group_bound: Exact | None
    search_min: Exact | None
    bound: int | None
    status: str
    exhaustive: bool = False
    note: str = ""

    @property
    def label(self) -> str:
        return self.group.spec_string() or "1"


def bounds_report(G: FiniteAbelianGroup, result: SearchResult | None = None, bound: int | None = None,
                  note: str = "") -> BoundsReport:
    """Compare a search minimum with the conjectured value and the |F|-1 bound."""
    if G.rank == 1:
        r = rho(G.order)
        conj = conjectured_cyclic_lambda(G.order)
    else:
        r = None
        conj = Exact(G.order - 1, G.order) if _is_elementary_two(G) and G.rank >= 2 else None
    gb = finite_upper_bound(G) if G.order >= 3 else None
    smin = result.min if result is not None else None
    if smin is None or conj is None:
        status = BOUND_ONLY
    else:
        c = compare_measure(smin, conj)
        status = AGREES if c == 0 else (BELOW if c < 0 else ABOVE)
    if status == BELOW:
        log.warning("POTENTIAL COUNTEREXAMPLE: %s has search minimum %s below conjectured %s",
                    G, smin, conj)
    return BoundsReport(G, r, conj, gb, smin, bound if result is None else result.bound, status,
                        exhaustive=result is not None and result.exhaustive_within_bound, note=note)


def _is_elementary_two(G: FiniteAbelianGroup) -> bool:
    return all(n == 2 for n in G.factors)


def verify_conjectures(n_max: int, bound: int, pow2_max: int = 3, budget: int = DEFAULT_BUDGET,
                       threads: int = 1) -> list[BoundsReport]:
    """Search Z/n for 2 <= n <= n_max and (Z/2)^k for 2 <= k <= pow2_max.

    A row whose search would exceed the budget is reported bound-only; the
    rest of the batch still runs.
    """
    groups = [make_group([n]) for n in range(2, n_max + 1)]
    groups += [make_group([2] * k) for k in range(2, pow2_max + 1)]
    rows = []
    for G in groups:
        try:
            res = search_lambda(SearchConfig(G, bound, budget=budget, threads=threads))
        except BudgetExceeded as exc:
            rows.append(bounds_report(G, None, bound, note=str(exc)))
            continue
        rows.append(bounds_report(G, res))
    return rows
