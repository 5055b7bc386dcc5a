"""Command line front end.

Every command prints one JSON record on stdout and a short human summary on
stderr.  Exit status: 0 ok, 2 invalid input, 3 search budget refused.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .finite_measure import CharPoly, Exact, NegInfinity, Numeric, mahler_finite, norm_integer
from .groups import FiniteAbelianGroup, parse_group
from .search import (BudgetExceeded, SearchConfig, bounds_report, quotient_bound_decay, search_lambda,
                     verify_conjectures)
from .torus_measure import (BORWEIN_F, BORWEIN_G, LEHMER, FiberedPoly, LaurentPoly, TorusMeasure,
                            borwein_fibered, is_kronecker, mahler_lawton, mahler_mixed, mahler_t1,
                            mahler_tk_grid)

SCHEMA = 1
TIMING_FIELDS = ("elapsedSec",)
log = logging.getLogger("abelian_lehmer")


class UsageError(ValueError):
    pass


def measure_json(m) -> dict[str, Any]:
    if isinstance(m, Exact):
        return {"normAbs": str(m.norm_abs), "order": m.order}
    if isinstance(m, NegInfinity) or (isinstance(m, TorusMeasure) and m.neg_infinity):
        return {"negInfinity": True}
    if isinstance(m, TorusMeasure):
        return {"float": m.value, "err": m.err_bound}
    if isinstance(m, Numeric):
        return {"float": m.value, "err": m.err_bound}
    raise TypeError(f"cannot serialise {m!r}")


def measure_from_json(d: dict[str, Any]):
    if d.get("negInfinity"):
        return NegInfinity()
    if "normAbs" in d:
        return Exact(int(d["normAbs"]), int(d["order"]))
    return Numeric(float(d["float"]), float(d["err"]))


def dumps(record: dict[str, Any]) -> str:
    return json.dumps(record, separators=(",", ":"))


# -- cache ---------------------------------------------------------------------------

class CacheError(OSError):
    pass


class ResultCache:
    """Append-only JSONL store of completed searches keyed by (group, bound)."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    def records(self) -> list[dict[str, Any]]:
        if not self.path.exists():
            return []
        out = []
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    if not isinstance(rec, dict):
                        raise ValueError("not an object")
                except ValueError as exc:
                    log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                    continue
                out.append(rec)
        return out

    def lookup(self, group: str, bound: int) -> dict[str, Any] | None:
        hit = None
        for rec in self.records():
            if rec.get("group") == group and rec.get("bound") == bound and "normAbs" in rec:
                hit = rec
        return hit

    def check_writable(self) -> None:
        try:
            with self.path.open("a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise CacheError(f"cache {self.path} is not writable: {exc}") from exc

    def append(self, record: dict[str, Any]) -> None:
        line = dumps(record) + "\n"
        try:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            raise CacheError(f"cache {self.path} is not writable: {exc}") from exc


# -- parsing helpers --------------------------------------------------------------------

def _group(text: str) -> FiniteAbelianGroup:
    try:
        return parse_group(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"bad coefficient {tok!r}") from None
    return out


def _load_json(text: str) -> Any:
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except ValueError as exc:
        raise UsageError(f"bad JSON input: {exc}") from None


def _element(token: str, G: FiniteAbelianGroup) -> tuple[int, ...]:
    x = tuple(_int_list(token)) if token.strip() else ()
    if not G.contains(x):
        raise UsageError(f"bad group element {token!r} for {G}")
    return x


def fibered_from_json(obj: dict[str, Any], group: FiniteAbelianGroup | None = None) -> FiberedPoly:
    try:
        k = int(obj["k"])
        if "group" in obj:
            group = _group(str(obj["group"]))
        if group is None:
            n = len(obj["fibers"])
            group = _group(str(n) if n > 1 else "")
        fibers = {}
        for key, terms in obj["fibers"].items():
            fibers[_element(key, group)] = LaurentPoly.from_json(k, terms)
        return FiberedPoly(k, group, fibers)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad fibered polynomial JSON: {exc!r}") from None


# -- commands -----------------------------------------------------------------------------

def cmd_measure_finite(args) -> dict[str, Any]:
    G = _group(args.group)
    vec = _int_list(args.coeffs)
    if len(vec) != G.order:
        raise UsageError(f"--coeffs has {len(vec)} entries, group order is {G.order}")
    f = CharPoly.from_vector(G, vec)
    if f.is_zero():
        raise UsageError("--coeffs is the zero combination")
    m = mahler_finite(f)
    cert = norm_integer(f)
    rec = {"group": G.spec_string(), "coeffs": vec, **measure_json(m)}
    if isinstance(m, Exact):
        rec["norm"] = str(cert.value)
        rec["value"] = float(m)
    print(f"m_{G}(f) = {m if isinstance(m, Exact) else '-inf'}"
          + (f" = {float(m):.12g}" if isinstance(m, Exact) else ""), file=sys.stderr)
    return rec


def cmd_measure_torus(args) -> dict[str, Any]:
    if args.json:
        obj = _load_json(args.json)
        try:
            p = LaurentPoly.from_json(int(obj["k"]), obj["terms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad Laurent polynomial JSON: {exc!r}") from None
    elif args.coeffs:
        p = LaurentPoly.from_coeffs(_int_list(args.coeffs))
    else:
        raise UsageError("measure-torus needs --coeffs or --json")
    if p.is_zero():
        raise UsageError("zero polynomial")
    rec: dict[str, Any] = {"k": p.k, "terms": p.to_json()}
    if p.k == 1:
        m = mahler_t1(p)
        rec["kronecker"] = m.kronecker
    elif args.lawton:
        m = mahler_lawton(p, args.lawton)
        rec["lawtonD"] = args.lawton
    else:
        m = mahler_tk_grid(p, args.grid)
        rec["grid"] = args.grid
    rec.update(measure_json(m))
    rec["method"] = m.method
    print(f"m(p) = {m.value:.12g} +- {m.err_bound:.2g} ({m.method}"
          + (", Kronecker: exactly 0" if m.kronecker else "") + ")", file=sys.stderr)
    return rec


def cmd_measure_mixed(args) -> dict[str, Any]:
    if not args.json:
        raise UsageError("measure-mixed needs --json")
    h = fibered_from_json(_load_json(args.json), _group(args.group) if args.group is not None else None)
    m = mahler_mixed(h, args.grid)
    rec = {"k": h.k, "group": h.group.spec_string(), **measure_json(m),
           "fibers": [{"element": list(x), **measure_json(part), "kronecker": part.kronecker}
                      for x, part in zip(h.group.elements, m.parts)]}
    print(f"m(h) = {m.value:.12g} +- {m.err_bound:.2g}", file=sys.stderr)
    return rec


def search_record(G: FiniteAbelianGroup, res, elapsed: float) -> dict[str, Any]:
    rec: dict[str, Any] = {"group": G.spec_string(), "bound": res.bound}
    if res.min is not None:
        rec.update(measure_json(res.min))
        rec["witness"] = res.witness.to_vector()
    else:
        rec["normAbs"] = None
        rec["witness"] = None
    rec.update({"scanned": res.scanned, "prunedBySymmetry": res.pruned_by_symmetry,
                "confirmed": res.confirmed, "exhaustive": res.exhaustive_within_bound,
                "elapsedSec": round(elapsed, 6)})
    return rec


def cmd_search(args) -> dict[str, Any]:
    G = _group(args.group)
    cache = ResultCache(args.cache)
    if not args.force:
        hit = cache.lookup(G.spec_string(), args.bound)
        if hit is not None:
            rec = dict(hit)
            rec.pop("schema", None)
            rec.pop("command", None)
            rec["cached"] = True
            print(f"cached: lambda({G}) <= (1/{rec['order']}) log {rec['normAbs']} within B={args.bound}",
                  file=sys.stderr)
            return rec
    cache.check_writable()
    cfg = SearchConfig(G, args.bound, shards=args.shards, budget=args.budget, threads=args.threads)
    t0 = time.perf_counter()
    res = search_lambda(cfg)
    rec = search_record(G, res, time.perf_counter() - t0)
    cache.append({"schema": SCHEMA, "command": "search", **rec})
    rec["cached"] = False
    if res.min is not None:
        print(f"lambda({G}) <= {res.min} = {float(res.min):.12g} "
              f"(min over |coeff| <= {args.bound}; witness {rec['witness']})", file=sys.stderr)
        if G.rank == 1:
            report = bounds_report(G, res)
            if report.status == "BELOW":
                print(f"!!! POTENTIAL COUNTEREXAMPLE: below conjectured {report.conjectured}", file=sys.stderr)
    else:
        print(f"no positive measure with |coeff| <= {args.bound}", file=sys.stderr)
    return rec


def _report_json(r) -> dict[str, Any]:
    return {
        "group": r.label,
        "rho": r.rho,
        "conjectured": measure_json(r.conjectured) if r.conjectured else None,
        "groupBound": measure_json(r.group_bound) if r.group_bound else None,
        "searchMin": measure_json(r.search_min) if r.search_min else None,
        "bound": r.bound,
        "status": r.status,
        "exhaustive": r.exhaustive,
        "note": r.note,
    }


def cmd_verify(args) -> dict[str, Any]:
    rows = verify_conjectures(args.nmax, args.bound, pow2_max=args.pow2_max, budget=args.budget,
                              threads=args.threads)
    for r in rows:
        flag = "  <-- POTENTIAL COUNTEREXAMPLE" if r.status == "BELOW" else ""
        print(f"{r.label:>8}  B={r.bound}  search={r.search_min}  conjectured={r.conjectured}  "
              f"{r.status}{flag}", file=sys.stderr)
    print("(agreement within a coefficient bound is evidence, not proof)", file=sys.stderr)
    return {"bound": args.bound, "rows": [_report_json(r) for r in rows]}


def cmd_bounds(args) -> dict[str, Any]:
    if args.orders:
        orders = _int_list(args.orders)
        try:
            vals = quotient_bound_decay(orders)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for m, v in zip(orders, vals):
            print(f"|F|={m}: {v} = {float(v):.6g}", file=sys.stderr)
        return {"orders": orders, "bounds": [dict(measure_json(v), value=float(v)) for v in vals]}
    if args.n is not None:
        if args.n < 2:
            raise UsageError("--n must be >= 2")
        G = _group(str(args.n))
    elif args.group is not None:
        G = _group(args.group)
    else:
        raise UsageError("bounds needs --n, --group or --orders")
    r = bounds_report(G)
    print(f"{G}: conjectured {r.conjectured}, |F|-1 bound {r.group_bound}", file=sys.stderr)
    return _report_json(r)


def cmd_borwein(args) -> dict[str, Any]:
    f = LaurentPoly.from_coeffs(BORWEIN_F)
    g = LaurentPoly.from_coeffs(BORWEIN_G)
    plus = mahler_t1(f + g)
    minus = mahler_t1(f - g)
    mixed = mahler_mixed(borwein_fibered())
    lehmer = mahler_t1(LEHMER)
    rec = {
        "f": list(BORWEIN_F), "g": list(BORWEIN_G),
        "fPlusG": {**measure_json(plus), "kronecker": is_kronecker(f + g)},
        "fMinusG": measure_json(minus),
        "mixed": measure_json(mixed),
        "lehmer": measure_json(lehmer),
        "mixedBelowLehmer": mixed.value < lehmer.value,
    }
    print(f"m(f+g) = 0 exactly (cyclotomic: {rec['fPlusG']['kronecker']})\n"
          f"m(f-g) = {minus.value:.6f}\n"
          f"m_(T+Z/2)(h) = {mixed.value:.6f} < m(f_L) = {lehmer.value:.6f}", file=sys.stderr)
    return rec


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelian-lehmer",
                                description="Mahler measures and Lehmer constants of compact abelian groups")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("measure-finite", help="exact measure over a finite abelian group")
    s.add_argument("--group", required=True, help='comma-separated factors, e.g. "2,2"')
    s.add_argument("--coeffs", required=True, help="coefficients in canonical character order")
    s.set_defaults(func=cmd_measure_finite)

    s = sub.add_parser("measure-torus", help="measure over T or T^k")
    s.add_argument("--coeffs", help="ascending univariate coefficients")
    s.add_argument("--json", help='{"k":2,"terms":[[[0,0],1],...]} or @file')
    s.add_argument("--grid", type=int, default=512)
    s.add_argument("--lawton", type=int, help="use the specialization r=(1,d,d^2,...)")
    s.set_defaults(func=cmd_measure_torus)

    s = sub.add_parser("measure-mixed", help="measure over T^k + F")
    s.add_argument("--json", help='{"k":1,"fibers":{"0":[[[0],1],...],...}} or @file')
    s.add_argument("--group")
    s.add_argument("--grid", type=int, default=256)
    s.set_defaults(func=cmd_measure_mixed)

    s = sub.add_parser("search", help="bounded exhaustive search for lambda(F)")
    s.add_argument("--group", required=True)
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--budget", type=int, default=10 ** 8)
    s.add_argument("--cache", default="./lehmer-cache.jsonl")
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="compare searches with the conjectured constants")
    s.add_argument("--nmax", type=int, default=9)
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--pow2-max", type=int, default=3)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--budget", type=int, default=10 ** 8)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bounds", help="rho(n), conjectured value and the |F|-1 bound")
    s.add_argument("--n", type=int)
    s.add_argument("--group")
    s.add_argument("--orders", help="increasing quotient orders, e.g. 3,4,8")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("borwein", help="the T + Z/2 example below the Lehmer polynomial")
    s.set_defaults(func=cmd_borwein)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    t0 = time.perf_counter()
    try:
        body = args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (UsageError, CacheError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    record = {"schema": SCHEMA, "command": args.command, **body}
    record.setdefault("elapsedSec", round(time.perf_counter() - t0, 6))
    print(dumps(record))
    return 0


def main() -> None:
    sys.exit(run())
