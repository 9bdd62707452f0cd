"""Command-line interface: ``frolov generate | wce | compare | bound``.

Exit status is 0 on success, 2 for invalid arguments and 3 for file errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from .bounds import BoundInputs, theoretical_bound
from .exceptions import FrolovError, PointSetFormatError
from .kernels import SmoothnessVector
from .pointset import write_pointset
from .rules import (
    FAMILIES,
    SparseGridSpec,
    fibonacci,
    fibonacci_rule,
    frolov_rule,
    lattice_basis,
    load_pointset,
    sparse_grid_rule,
)
from .wce import CubatureRule, worst_case_error

__all__ = ["main", "build_parser", "CSV_HEADER", "BOUND_HEADER"]

CSV_HEADER = ["method", "d", "r", "N", "abs_wce", "norm_wce", "wall_time_s", "clamped"]
BOUND_HEADER = ["n", "bound"]
METHODS = ("improved", "classical", "sparsegrid", "fibonacci")

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3


class UsageError(Exception):
    pass


def _ladder(n_min, n_max, step):
    if n_min < 1 or n_max < n_min or step < 2:
        raise UsageError("need 1 <= n-min <= n-max and step >= 2")
    out, n = [], n_min
    while n <= n_max:
        out.append(n)
        n *= step
    return out


def _smoothness(text, d=None):
    try:
        r = SmoothnessVector.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if d is not None and r.d == 1 and d > 1:
        r = SmoothnessVector(r.r * d)
    if d is not None and r.d != d:
        raise UsageError(f"smoothness {text!r} has {r.d} components, expected d={d}")
    return r


def _row(rule: CubatureRule, r, t0):
    """CSV row; the wall time runs from ``t0`` (rule construction) to now."""
    rep = worst_case_error(rule, r)
    elapsed = time.perf_counter() - t0
    return {
        "method": rule.method,
        "d": r.d,
        "r": str(r),
        "N": rule.N,
        "abs_wce": "%.17g" % rep.absolute_wce,
        "norm_wce": "%.17g" % rep.normalized_wce,
        "wall_time_s": "%.6f" % elapsed,
        "clamped": int(rep.clamped),
    }


def _write_csv(path, header, rows, append=False):
    if path in (None, "-"):
        w = csv.DictWriter(sys.stdout, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return
    fresh = not append or not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a" if append else "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        if fresh:
            w.writeheader()
        w.writerows(rows)


def _build_rule(method, d, n):
    """Rule for ``method`` near size ``n``; ``None`` if none fits."""
    if method in FAMILIES:
        return frolov_rule(d, n, method)
    if method == "sparsegrid":
        best = None
        for L in range(0, 64):
            if d * L > 62:
                break
            rule = sparse_grid_rule(SparseGridSpec(L, d))
            if rule.N > n:
                break
            best = rule
        return best
    if method == "fibonacci":
        if d != 2:
            raise UsageError("the Fibonacci lattice exists only for d=2")
        m = 2
        while fibonacci(m + 1) <= n:
            m += 1
        return fibonacci_rule(m)
    raise UsageError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def cmd_generate(args):
    if args.n <= 0:
        raise UsageError("n must be positive")
    t0 = time.perf_counter()
    rule = frolov_rule(args.d, args.n, args.family)
    elapsed = time.perf_counter() - t0
    write_pointset(args.out, rule.points, args.n, f"{args.family}_frolov")
    print(f"N={rule.N} time={elapsed:.3f}s")
    return EXIT_OK


def cmd_wce(args):
    if args.points:
        t0 = time.perf_counter()
        rule = load_pointset(args.points)
    else:
        if args.method is None or args.d is None or args.n is None:
            raise UsageError("give --points, or --method with --d and --n")
        t0 = time.perf_counter()
        rule = _build_rule(args.method, args.d, args.n)
        if rule is None:
            raise UsageError(f"no {args.method} rule with at most {args.n} points")
    r = _smoothness(args.r, rule.d)
    row = _row(rule, r, t0)
    _write_csv(args.out, CSV_HEADER, [row], append=True)
    return EXIT_OK


def cmd_compare(args):
    methods = [m for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise UsageError("empty method list")
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise UsageError(f"unknown methods {bad}; choose from {', '.join(METHODS)}")
    r = _smoothness(args.r, args.d)
    ladder = _ladder(args.n_min, args.n_max, args.step)
    rows = []
    for method in methods:
        seen = set()
        for n in ladder:
            t0 = time.perf_counter()
            rule = _build_rule(method, args.d, n)
            if rule is None or rule.N in seen:
                continue
            seen.add(rule.N)
            rows.append(_row(rule, r, t0))
    rows.sort(key=lambda row: (row["method"], row["N"]))
    _write_csv(args.out, CSV_HEADER, rows)
    return EXIT_OK


def cmd_bound(args):
    r = _smoothness(args.r, args.d)
    basis = lattice_basis(args.d, args.family)
    rows = []
    for n in _ladder(args.n_min, args.n_max, args.step):
        try:
            value = theoretical_bound(BoundInputs.from_basis(basis, n, r))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append({"n": n, "bound": "%.17g" % value})
    _write_csv(args.out, BOUND_HEADER, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frolov", description="Frolov cubature toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="enumerate a Frolov point set and write it")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=float, default=1024)
    g.add_argument("--family", choices=FAMILIES, default="improved")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    w = sub.add_parser("wce", help="worst-case error of one rule (appends a CSV row)")
    w.add_argument("--points", help="point-set file")
    w.add_argument("--method", choices=METHODS)
    w.add_argument("--d", type=int)
    w.add_argument("--n", type=float)
    w.add_argument("--r", required=True, help="smoothness, e.g. 2 or 1,2,2")
    w.add_argument("--out", default="-", help="CSV file to append to (default stdout)")
    w.set_defaults(func=cmd_wce)

    ladder_help = "ladder n-min, n-min*step, ... up to n-max"
    c = sub.add_parser("compare", help="worst-case errors of several methods over a ladder of n")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--r", required=True)
    c.add_argument("--methods", default="improved,classical,sparsegrid")
    c.add_argument("--n-min", type=int, default=2**8, help=ladder_help)
    c.add_argument("--n-max", type=int, default=2**14)
    c.add_argument("--step", type=int, default=4)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_compare)

    b = sub.add_parser("bound", help="theoretical error bound over a ladder of n")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--r", required=True)
    b.add_argument("--family", choices=FAMILIES, default="improved")
    b.add_argument("--n-min", type=int, default=2**8, help=ladder_help)
    b.add_argument("--n-max", type=int, default=2**16)
    b.add_argument("--step", type=int, default=4)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bound)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PointSetFormatError, OSError) as exc:
        print(f"frolov {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, FrolovError, ValueError) as exc:
        print(f"frolov {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
