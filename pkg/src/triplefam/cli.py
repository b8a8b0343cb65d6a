"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 instance above a resource cap,
4 verification failure.  Results go to stdout; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .bounds import report_g, report_h
from .constructions import KINDS, ConstructionSpec
from .core import format_family, is_member_H
from .search import (
    CSV_HEADER,
    METHODS,
    CapExceededError,
    exact_g,
    exact_h,
    exact_table,
    m_sweep,
    monotonicity_violations,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _emit_family(fam, fmt: str) -> None:
    if fmt == "json":
        _emit_json({"n": fam.n, "size": len(fam), "members": fam.to_lists()})
    else:
        sys.stdout.write(format_family(fam))


def cmd_bounds(args) -> int:
    if args.x is not None:
        if args.k is not None or args.ell is not None:
            raise UsageError("--x cannot be combined with --k/--ell")
        if args.x < 0:
            raise UsageError("--x must be nonnegative")
        rep = report_h(args.n, args.x)
    else:
        if args.k is None or args.ell is None:
            raise UsageError("give --k and --ell, or --x")
        if args.k < 0 or args.k > args.n:
            raise UsageError("--k must lie in [0, n]")
        rep = report_g(args.n, args.k, args.ell)
    _emit_json(rep.to_json())
    return EXIT_OK


def cmd_search(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    if args.kind == "uniform":
        if args.k is None:
            raise UsageError("uniform search needs --k")
        if not 0 <= args.k <= args.n:
            raise UsageError("--k must lie in [0, n]")
        res = exact_g(args.n, args.k, args.ell, args.method, cap=args.cap, jobs=args.jobs)
    else:
        res = exact_h(args.n, args.ell, args.method, jobs=args.jobs)
    if args.format == "family":
        _emit_family(res.witness, "family")
    else:
        out = res.to_json()
        if args.check:
            out["check"] = len(res.witness) == res.value and is_member_H(res.witness, args.ell)
        _emit_json(out)
    if args.check and not (len(res.witness) == res.value and is_member_H(res.witness, args.ell)):
        print("witness failed re-verification", file=sys.stderr)
        return EXIT_VERIFY
    print(f"{res.method}: value {res.value}, {res.nodes_explored} nodes, "
          f"{res.wall_time * 1000:.1f} ms", file=sys.stderr)
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.kind, n=args.n, k=args.k, ell=args.ell, j=args.j, x=args.x)
    need = {
        "uniform-j": ("n", "k", "ell", "j"),
        "star": ("n", "k"),
        "nonuniform-dual": ("n", "x"),
        "nonuniform-primal": ("n", "x"),
        "counterexample-l4": (),
    }[args.kind]
    missing = [f"--{name}" for name in need if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {' '.join(missing)}")
    try:
        fam = spec.build()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit_family(fam, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be positive")
    rep = run_suite(args.suite, args.trials, args.seed)
    for line in rep.lines:
        print(line)
    if rep.ok:
        return EXIT_OK
    worst = rep.smallest_failure()
    if worst is not None:
        print("smallest failing family:")
        sys.stdout.write(format_family(worst))
    return EXIT_VERIFY


def cmd_sweep(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.what == "m":
        for name in ("ell", "n", "k_from", "k_to"):
            if getattr(args, name) is None:
                raise UsageError(f"sweep m needs --{name.replace('_', '-')}")
        if args.k_from > args.k_to or args.k_from < 0:
            raise UsageError("need 0 <= --k-from <= --k-to")
        if 3 * args.k_from < args.ell:
            raise UsageError("need 3k >= ell over the whole range")
        rows = m_sweep(args.ell, args.n, range(args.k_from, args.k_to + 1))
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.csv_fields())
        for a, b in zip(rows, rows[1:]):
            if b.best_j > a.best_j:
                print(f"best_j {a.best_j} -> {b.best_j} at k={b.k} (k/n={b.k / args.n:.4f})",
                      file=sys.stderr)
        for a, b in monotonicity_violations(rows):
            print(f"best_j decreases between k={a} and k={b}", file=sys.stderr)
        return EXIT_OK
    if args.n_max is None or args.ell is None:
        raise UsageError("sweep table needs --ell and --n-max")
    ks = args.k or [2, 3]
    instances = [(n, k, args.ell) for k in ks for n in range(max(k, 1), args.n_max + 1)]
    rows = exact_table(instances, brute_cap=args.brute_cap, jobs=args.jobs)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
        if row.brute is not None and row.brute != row.exact:
            print(f"brute/shifted disagreement at {(row.n, row.k, row.ell)}", file=sys.stderr)
            return EXIT_VERIFY
        if row.exact != row.lower:
            print(f"g({row.n},{row.k},{row.ell})={row.exact} differs from the prefix "
                  f"construction {row.lower}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triplefam", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="closed-form bounds for g(n,k,ell) or h(n,3n-x)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int)
    b.add_argument("--ell", type=int)
    b.add_argument("--x", type=int)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exact maximum by exhaustive search")
    s.add_argument("kind", choices=("uniform", "nonuniform"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--method", choices=METHODS, default="shifted-bb")
    s.add_argument("--cap", type=int, help="candidate cap (default 40 brute, 400 shifted-bb)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--check", action="store_true", help="re-verify the witness exhaustively")
    s.add_argument("--format", choices=("json", "family"), default="json")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("construct", help="emit an explicit family")
    c.add_argument("kind", choices=KINDS)
    for name in ("n", "k", "ell", "j", "x"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--format", choices=("family", "json"), default="family")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", help="tables over a parameter range (CSV)")
    w.add_argument("what", choices=("m", "table"))
    w.add_argument("--ell", type=int)
    w.add_argument("--n", type=int)
    w.add_argument("--k-from", type=int)
    w.add_argument("--k-to", type=int)
    w.add_argument("--n-max", type=int)
    w.add_argument("--k", type=int, action="append")
    w.add_argument("--brute-cap", type=int, default=40)
    w.add_argument("--jobs", type=int, default=1)
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"triplefam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"triplefam: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
