"""Command-line front end.

Exit codes: 0 success, 1 a check failed (verification, bound or
integrality), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .counting import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    ConstraintParams,
    brute_force_count,
    degree_chromatic_polynomial,
    resolve_method,
)
from .graph import (
    Graph,
    GraphError,
    certify_tree,
    parse_edge_list,
    random_tree,
    random_tree_family,
)
from .polyalg import IntegralityError, assert_integral
from .theorem import HypothesisViolation, sweep_pair_bounds, verify_tree_theorem

THREADS_ENV = "DEGCHROM_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CAMPAIGN_FIELDS = ["seed", "n", "m", "pass", "second_coeff_expected",
                   "second_coeff_actual", "elapsed_ms"]
BOUND_FIELDS = ["case", "v1", "v2", "adjacent", "m", "k", "w_size", "a_v1",
                "measured", "bound", "slack", "strict", "pass"]


class UsageError(Exception):
    pass


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _read_graph(path: str) -> Graph:
    try:
        if path == "-":
            return parse_edge_list(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return parse_edge_list(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _budget(args) -> int | None:
    return None if args.allow_large else DEFAULT_BUDGET


def _emit_csv(rows: Iterable[dict], fields: list[str], out) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    out.write(buf.getvalue())


def _notice(msg: str) -> None:
    print(f"degchrom: {msg}", file=sys.stderr)


# -- compute / oracle ----------------------------------------------------------

def cmd_compute(args, out) -> int:
    g = _read_graph(args.graph)
    if args.m < 1:
        raise UsageError(f"--m must be >= 1, got {args.m}")
    method = resolve_method(g, args.method)
    if method == "tree-dp":
        certify_tree(g)
    try:
        p = degree_chromatic_polynomial(g, args.m, method, _budget(args), args.threads)
    except IntegralityError as exc:
        _notice(str(exc))
        return EXIT_FAIL
    coeffs = [str(c) for c in assert_integral(p)]
    if args.format == "json":
        out.write(json.dumps({"n": g.n, "m": args.m, "method": method,
                              "coefficients": coeffs}) + "\n")
    elif args.format == "csv":
        _emit_csv([{"n": g.n, "m": args.m, "method": method,
                    "coefficients": " ".join(coeffs)}],
                  ["n", "m", "method", "coefficients"], out)
    else:
        out.write(f"P_{args.m}(G, k) = {p}\n")
    return EXIT_OK


def _k_range(args) -> range:
    if args.k is not None:
        return range(args.k, args.k + 1)
    lo = 0 if args.k_min is None else args.k_min
    hi = args.k_max
    if hi is None:
        raise UsageError("give --k or --k-max")
    if lo < 0 or hi < lo:
        raise UsageError(f"bad k range [{lo}, {hi}]")
    return range(lo, hi + 1)


def cmd_oracle(args, out) -> int:
    g = _read_graph(args.graph)
    if args.m < 1:
        raise UsageError(f"--m must be >= 1, got {args.m}")
    ks = _k_range(args)
    rows = []
    for k in ks:
        params = ConstraintParams(args.m, k)
        count = brute_force_count(g, params, _budget(args), args.threads).value
        rows.append({"k": k, "count": str(count)})
    if args.format == "json":
        out.write(json.dumps({"n": g.n, "m": args.m, "method": "oracle", "counts": rows}) + "\n")
    elif args.format == "csv":
        _emit_csv(rows, ["k", "count"], out)
    else:
        for r in rows:
            out.write(f"k={r['k']} count={r['count']}\n")
    return EXIT_OK


# -- verify / campaign ---------------------------------------------------------

def _verify_one(job):
    """Worker entry point; must stay importable at module level for
    process pools."""
    index, seed, tree_args, m, timed = job
    if seed is None:
        n, edges, source = tree_args
        t = certify_tree(Graph(n, edges))
    else:
        n = tree_args
        t = random_tree(n, seed)
        source = f"random(n={n}, seed={seed})"
    try:
        report = verify_tree_theorem(t, m, source=source, timed=timed)
    except IntegralityError as exc:
        return index, seed, n, m, None, str(exc)
    return index, seed, n, m, report.to_dict(), None


def _verify_jobs(args) -> list[tuple]:
    if (args.graph is None) == (args.random is None):
        raise UsageError("give exactly one of --graph or --random")
    ms = args.m
    for m in ms:
        if m < 1:
            raise UsageError(f"--m must be >= 1, got {m}")
    jobs = []
    if args.graph is not None:
        t = certify_tree(_read_graph(args.graph))
        targets = [(None, (t.n, t.edges, args.graph), t.n)]
    else:
        family = random_tree_family(args.random, args.n_min, args.n_max, args.seed)
        targets = [(seed, n, n) for n, seed in family]
    for seed, tree_args, n in targets:
        for m in ms:
            if not 1 < m < n:
                _notice(f"skipping n={n} m={m}: formula needs 1 < m < n")
                continue
            jobs.append((len(jobs), seed, tree_args, m, args.timings))
    return jobs


def _run_jobs(jobs, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [_verify_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # map preserves submission order, so output does not depend on scheduling
        return list(pool.map(_verify_one, jobs, chunksize=max(1, len(jobs) // (4 * threads))))


def cmd_verify(args, out) -> int:
    jobs = _verify_jobs(args)
    results = _run_jobs(jobs, args.threads)
    failures = 0
    rows = []
    for _, seed, n, m, report, error in results:
        if report is None:
            failures += 1
            _notice(f"n={n} m={m} seed={seed}: {error}")
            report = {"tree": {"n": n}, "m": m, "pass": False, "error": error,
                      "second_coeff_expected": "", "second_coeff_actual": "",
                      "elapsed_ms": None}
        elif not report["pass"]:
            failures += 1
            _notice(f"COUNTEREXAMPLE n={n} m={m} seed={seed}: coefficients "
                    + " ".join(report["coefficients"]))
        rows.append((seed, n, m, report))

    if args.format == "json":
        for _, _, _, report in rows:
            out.write(json.dumps(report) + "\n")
    elif args.format == "csv":
        _emit_csv(({"seed": "" if seed is None else seed, "n": n, "m": m,
                    "pass": str(r["pass"]).lower(),
                    "second_coeff_expected": r["second_coeff_expected"],
                    "second_coeff_actual": r["second_coeff_actual"],
                    "elapsed_ms": "" if r["elapsed_ms"] is None else r["elapsed_ms"]}
                   for seed, n, m, r in rows), CAMPAIGN_FIELDS, out)
    else:
        for seed, n, m, r in rows:
            status = "PASS" if r["pass"] else "FAIL"
            line = (f"{status} n={n} m={m} seed={'-' if seed is None else seed} "
                    f"second={r['second_coeff_actual']} expected={r['second_coeff_expected']}")
            if not r["pass"] and "coefficients" in r:
                line += " coefficients=" + " ".join(r["coefficients"])
            out.write(line + "\n")
    _notice(f"{len(rows) - failures}/{len(rows)} passed")
    return EXIT_FAIL if failures else EXIT_OK


# -- bounds --------------------------------------------------------------------

def cmd_bounds(args, out) -> int:
    t = certify_tree(_read_graph(args.graph))
    if args.m < 2:
        raise UsageError(f"the pairwise bounds need m >= 2, got {args.m}")
    lo = 1 if args.k_min is None else args.k_min
    if lo < 1 or args.k_max < lo:
        raise UsageError(f"bad k range [{lo}, {args.k_max}]")
    reports = []
    for k in range(lo, args.k_max + 1):
        params = ConstraintParams(args.m, k)
        reports.extend(sweep_pair_bounds(t, params, ordered=False, budget=_budget(args)))
    failures = sum(not r.passed for r in reports)
    if args.format == "json":
        for r in reports:
            out.write(json.dumps(r.to_dict()) + "\n")
    elif args.format == "csv":
        rows = []
        for r in reports:
            d = r.to_dict()
            d["v1"], d["v2"] = d.pop("pair")
            d["w_size"] = "" if d["w_size"] is None else d["w_size"]
            for key in ("adjacent", "strict", "pass"):
                d[key] = str(d[key]).lower()
            rows.append(d)
        _emit_csv(rows, BOUND_FIELDS, out)
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status} {r.case} pair=({r.v1},{r.v2}) k={r.k} "
                      f"measured={r.measured} bound={r.bound}\n")
    _notice(f"{len(reports) - failures}/{len(reports)} bounds hold")
    return EXIT_FAIL if failures else EXIT_OK


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degchrom",
        description="Degree chromatic polynomials: exact computation and checks on trees.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=["json", "csv", "text"], default=fmt)
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help=f"worker count (default from ${THREADS_ENV}, else 1)")
        p.add_argument("--allow-large", action="store_true",
                       help="lift the 2^30-coloring enumeration budget")

    p = sub.add_parser("compute", help="interpolate P_m(G, k) and print its coefficients")
    p.add_argument("--graph", required=True, help="edge-list file, or - for stdin")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["auto", "oracle", "tree-dp"], default="auto")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="count colorings by brute-force enumeration")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    common(p)
    p.set_defaults(func=cmd_oracle)

    for name, fmt, text in (("verify", "json", "check the leading coefficients on trees"),
                            ("campaign", "csv", "verify a seeded batch of random trees")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--graph")
        p.add_argument("--random", type=int, metavar="COUNT")
        p.add_argument("--n-min", type=int, default=10)
        p.add_argument("--n-max", type=int, default=60)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--m", type=int, nargs="+", required=True)
        p.add_argument("--timings", action="store_true",
                       help="record elapsed times (makes output run-dependent)")
        common(p, fmt)
        p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="check the pairwise intersection bounds")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        _notice("--threads must be >= 1")
        return EXIT_USAGE
    if args.mode == "campaign" and args.random is None:
        _notice("campaign needs --random COUNT")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, GraphError, BudgetExceededError, HypothesisViolation, ValueError) as exc:
        _notice(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
