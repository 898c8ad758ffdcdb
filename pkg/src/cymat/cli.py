"""Command-line interface: ``cymat <subcommand> ...``.

Exit codes: 0 success, 1 invalid input or failed verification, 2 a
resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, bounds, orbit_count, search
from .errors import CymatError, TooLarge
from .matroid import verify_exchange_axiom, is_cyclic

EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _check_report(m) -> str:
    cyc = is_cyclic(m.bases_set())
    ok = verify_exchange_axiom(m.bases_set()).ok
    return f"shift-closed: {'ok' if cyc else 'FAIL'}; exchange axiom: {'ok' if ok else 'FAIL'}"


def cmd_bounds(args) -> int:
    if args.n < 4:
        raise UsageError(f"bounds needs n >= 4, got {args.n}")
    if args.k is not None:
        if not 2 <= args.k <= args.n - 1:
            raise UsageError(f"need 2 <= k <= n-1, got k={args.k}")
        reports = [bounds.m_best(args.n, args.k)]
        print(bounds.table_csv(reports, header=args.csv), end="")
        return EXIT_OK
    reports = bounds.bounds_table(args.n)
    print(bounds.table_csv(reports) if args.csv else bounds.table_text(reports), end="")
    return EXIT_OK


def cmd_orbits(args) -> int:
    n, k = args.n, args.k
    if not 1 <= k <= n - 1 or n > 63:
        raise UsageError(f"need 1 <= k <= n-1 and n <= 63, got n={n}, k={k}")
    census = orbit_count.total_orbits_by_composition(n, k)
    brute = orbit_count.census_brute_force(n, k) if args.brute else None
    if args.csv:
        print(census.to_csv(), end="")
    else:
        lengths = " ".join(f"{r}:{c}" for r, c in sorted(census.per_length.items()))
        print(f"n={n} k={k}")
        print(f"lengths {lengths}")
        print(f"total {census.total}")
        print(f"burnside {orbit_count.count_orbits_burnside(n, k)}")
    if brute is not None:
        ok = brute.per_length == census.per_length
        print(f"brute {brute.total} {'OK' if ok else 'MISMATCH'}")
        if not ok:
            return EXIT_INVALID
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ms = search.enumerate_cyclic_matroids(args.n, args.k, jobs=args.jobs)
    if args.out:
        Path(args.out).write_text(json.dumps([m.to_document() for m in ms], indent=2) + "\n")
    try:
        mb = str(bounds.m_best(args.n, args.k).m_best)
    except ValueError:
        mb = "-"
    print(f"{args.n},{args.k},{len(ms)},{min(m.basis_count for m in ms)},{mb}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        doc = json.loads(Path(args.path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from exc
    docs = doc if isinstance(doc, list) else [doc]
    status = EXIT_OK
    for d in docs:
        rep = search.verify_appendix_fixture(d)
        print(rep.summary())
        if not rep.valid:
            status = EXIT_INVALID
    return status


def cmd_search(args) -> int:
    cfg = search.SearchConfig(
        args.n, args.k,
        mode="exhaustive" if args.exhaustive else "randomized",
        seed=args.seed,
        max_candidates=args.max_candidates,
        require_nonuniform=args.require_nonuniform,
    )
    for m in search.search(cfg, jobs=args.jobs):
        print(m.to_json())
    return EXIT_OK


def cmd_code(args) -> int:
    code = algebra.parse_code_spec(args.spec)
    m = algebra.code_matroid(code, jobs=args.jobs)
    print(m.to_json())
    print(_check_report(m))
    return EXIT_OK


def cmd_plane(args) -> int:
    q = args.q
    d = algebra.perfect_difference_set(q)
    inc = algebra.cyclic_plane_incidence(q)
    rank = inc.rank()
    expected = algebra.expected_plane_rank(q)
    print(f"q={q} n={d.n} difference_set={d} rank={rank} expected={expected} {'OK' if rank == expected else 'MISMATCH'}")
    if rank != expected:
        return EXIT_INVALID
    try:
        m = algebra.plane_matroid(q, full=args.full, jobs=args.jobs)
    except TooLarge as exc:
        print(f"matroid not enumerated ({exc})")
        return EXIT_OK
    print(m.to_json())
    if m.basis_count <= algebra.PLANE_FULL_LIMIT:
        print(_check_report(m))
    else:
        print(f"shift-closed: {'ok' if is_cyclic(m.bases_set()) else 'FAIL'}; exchange axiom: skipped (representable)")
    return EXIT_OK


def cmd_knormal(args) -> int:
    modulus = algebra.parse_element(args.modulus) if args.modulus else None
    alpha = algebra.find_knormal(args.p, args.n, args.k, modulus)
    defect, m = algebra.knormal_matroid(args.p, args.n, modulus, alpha)
    print(f"alpha={','.join(map(str, alpha))} defect={defect}")
    print(m.to_json())
    print(_check_report(m))
    return EXIT_OK


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise UsageError(f"expected a range like 6..30, got {text!r}") from exc


def cmd_figures(args) -> int:
    if (args.fixed_n is None) == (args.rule is None):
        raise UsageError("give exactly one of --fixed-n or --rule")
    if args.fixed_n is not None:
        if args.fixed_n < 4:
            raise UsageError("--fixed-n needs n >= 4")
        rows = bounds.fixed_n_series(args.fixed_n)
    else:
        if args.rule not in bounds.K_RULES:
            raise UsageError(f"unknown rule {args.rule!r}; choose from {', '.join(bounds.K_RULES)}")
        if args.n is None:
            raise UsageError("--rule needs --n LO..HI")
        rows = bounds.figure_series(_parse_range(args.n), args.rule)
    _write(args.out, bounds.series_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cymat", description="Cyclic matroids on Z_n: bounds, orbits, search, constructions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="lower bounds on the number of bases")
    b.add_argument("-n", type=int, required=True)
    b.add_argument("-k", type=int)
    b.add_argument("--csv", action="store_true")
    b.set_defaults(func=cmd_bounds)

    o = sub.add_parser("orbits", help="count orbits of k-subsets")
    o.add_argument("-n", type=int, required=True)
    o.add_argument("-k", type=int, required=True)
    o.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    o.add_argument("--csv", action="store_true")
    o.set_defaults(func=cmd_orbits)

    e = sub.add_parser("enumerate", help="all cyclic k-matroids on Z_n")
    e.add_argument("-n", type=int, required=True)
    e.add_argument("-k", type=int, required=True)
    e.add_argument("out", nargs="?", help="JSON output path")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="verify a matroid JSON document")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="seeded randomized search")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-candidates", type=int, default=200)
    s.add_argument("--require-nonuniform", action="store_true")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("code", help="matroid of a cyclic code, e.g. 'p=2;n=7;g=1,0,1,1'")
    c.add_argument("spec")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_code)

    pl = sub.add_parser("plane", help="cyclic projective plane of order q")
    pl.add_argument("-q", type=int, required=True)
    pl.add_argument("--full", action="store_true", help="enumerate bases even when large")
    pl.add_argument("--jobs", type=int, default=1)
    pl.set_defaults(func=cmd_plane)

    kn = sub.add_parser("knormal", help="matroid of the first k-normal element")
    kn.add_argument("-p", type=int, required=True)
    kn.add_argument("-n", type=int, required=True)
    kn.add_argument("-k", type=int, required=True)
    kn.add_argument("--modulus", help="irreducible modulus coefficients, ascending")
    kn.set_defaults(func=cmd_knormal)

    f = sub.add_parser("figures", help="CSV series of m1, m2, m3")
    f.add_argument("--fixed-n", type=int)
    f.add_argument("--rule")
    f.add_argument("--n", help="range LO..HI")
    f.add_argument("out", nargs="?")
    f.set_defaults(func=cmd_figures)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: TooLarge: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CymatError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
