"""Command line entry point: ``python3 -m utcount <command> ...``.

Exit codes: 0 success, 1 a check failed or a computation was refused
(cap exceeded), 2 usage error (bad arguments, malformed partition, bad q).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import countpoly as cp
from .gfq import FieldError, field_make
from .nilalg import build_crossing, build_un
from .orbitengine import ACTIONS, CapExceeded, lambda_counts, orbit_summary
from .setpartition import (
    PartitionError,
    arc_set,
    classify,
    connected_components,
    count_table,
    crossing_components,
    crossing_data,
    enumerate_partitions,
    format_partition,
    max_crossings,
    parse,
    split_atomic,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(obj, as_json: bool, text: str | None = None):
    if as_json or text is None:
        print(json.dumps(obj, indent=None if not as_json else 2, sort_keys=False))
    else:
        print(text)


def cmd_classify(args) -> int:
    lam = parse(args.partition)
    cd = crossing_data(lam)
    out = {
        "partition": format_partition(lam),
        "flags": classify(lam).as_dict(),
        "arcs": [list(a) for a in arc_set(lam)],
        "crossings": [list(c) for c in cd.crossings4],
        "cr": [list(c) for c in cd.cr],
        "d": cd.d_stat,
        "maximal_crossings": [list(seq) for seq, _ in max_crossings(lam)],
        "atomic_parts": [format_partition(g) for g in split_atomic(lam)],
        "connected_components": [format_partition(g) for g in connected_components(lam)],
        "crossing_components": [format_partition(g) for g in crossing_components(lam)],
    }
    print(json.dumps(out, indent=2 if args.json else None))
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = []
    for n in range(1, args.max_n + 1):
        rows.append((n, *count_table(n)))
    if args.json:
        print(json.dumps([dict(zip(("n", "all", "atomic", "connected", "crossing_connected"), r)) for r in rows]))
    else:
        for r in rows:
            print(" ".join(map(str, r)))
    if args.check:
        ref = cp.load_table1()
        bad = [r[0] for r in rows if tuple(r[1:]) != ref.get(r[0])]
        if bad:
            print(f"mismatch with stored table at n = {bad}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def _coeffs(text: str | None):
    return None if text is None else [int(x) for x in text.split(",")]


def cmd_count(args) -> int:
    lam = parse(args.partition)
    field_make(args.q)
    res = lambda_counts(lam, args.q)
    counts = res.counts if args.e is None else {args.e: res.counts.get(args.e, 0)}
    out = {str(e): c for e, c in counts.items()}
    if args.json:
        out = {
            "partition": format_partition(lam),
            "q": args.q,
            "counts": out,
            "kirillov_extended": {str(f): c for f, c in res.kir_ext.items()},
            "kirillov_plain": {str(f): c for f, c in res.kir_plain.items()},
        }
    print(json.dumps(out))
    return EXIT_OK


def cmd_assemble(args) -> int:
    poly = cp.assemble_N(args.n, args.e)
    if args.q is not None:
        value = poly(args.q)
        _emit({"n": args.n, "e": args.e, "q": args.q, "value": value}, args.json, str(value))
        return EXIT_OK
    if args.json:
        print(json.dumps({"n": args.n, "e": args.e, "q": poly.as_json(), "q-1": poly.to("q-1").as_json()}))
    else:
        print(poly)
        print(f"in (q-1): {poly.to('q-1')}")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        params[key.replace("-", "_")] = json.loads(val)
    rep = run_suite(args.suite, **params)
    if args.json:
        print(json.dumps(rep.as_json(), indent=2))
    else:
        print("\n".join(rep.lines()))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _algebra_from_args(args):
    F = field_make(args.q)
    if args.partition is not None:
        return build_crossing(parse(args.partition), F, extended=args.extended), args.partition
    return build_un(args.un, F), f"u_{args.un}"


def cmd_dump(args) -> int:
    A, _ = _algebra_from_args(args)
    print(A.dump())
    return EXIT_OK


def cmd_orbits(args) -> int:
    A, name = _algebra_from_args(args)
    s = orbit_summary(A, args.action, threads=args.threads)
    out = s.as_json(name + ("~" if args.partition is not None and args.extended else ""))
    if args.action == "coadjoint":
        out["degrees"] = {str(f): c for f, c in s.degree_histogram().items()}
    print(json.dumps(out, indent=2 if args.json else None))
    return EXIT_OK


def cmd_sweep(args) -> int:
    """Crossing-connected partitions with a nonzero count at degree e.  Exploratory only."""
    t0 = time.perf_counter()
    hits, scanned, skipped = [], 0, 0
    for n in range(1, args.max_n + 1):
        for lam in enumerate_partitions(n, filter="crossing_connected"):
            if len(crossing_data(lam).cr) + 1 > args.max_dim:
                skipped += 1
                continue
            scanned += 1
            c = lambda_counts(lam, args.q).counts.get(args.e, 0)
            if c:
                hits.append({"partition": format_partition(lam), "n": n, "count": c})
    out = {
        "e": args.e,
        "q": args.q,
        "max_n": args.max_n,
        "scanned": scanned,
        "skipped_over_dim": skipped,
        "nonzero": hits,
        "seconds": round(time.perf_counter() - t0, 2),
    }
    print(json.dumps(out, indent=2 if args.json else None))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="utcount", description="Supercharacter constituent counts for UT_n(q).")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=1, help="worker threads for orbit scans (1 = reference mode)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="arcs, crossings and components of a set partition")
    s.add_argument("partition", help='blocks separated by "/", e.g. 1,3,5/2,4')
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("table1", help="counts of all/atomic/connected/crossing-connected partitions")
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--check", action="store_true", help="compare against the stored table")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("count", help="N_(Lambda,e)(q) from the orbit engine")
    s.add_argument("--partition", required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--e", type=int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("assemble", help="N_(n,e)(q) from the stored tables")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--q", type=int)
    s.set_defaults(func=cmd_assemble)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--param", action="append", metavar="KEY=JSON", help="override a suite parameter, e.g. max_n=6")
    s.set_defaults(func=cmd_verify)

    for name, func, hlp in (
        ("dump-algebra", cmd_dump, "structure constants of a crossing algebra or u_n"),
        ("orbits", cmd_orbits, "orbit summary of an algebra group action"),
    ):
        s = sub.add_parser(name, help=hlp)
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--partition")
        g.add_argument("--un", type=int, metavar="N")
        s.add_argument("--extended", action="store_true")
        s.add_argument("--q", type=int, required=True)
        if name == "orbits":
            s.add_argument("--action", choices=ACTIONS, default="coadjoint")
        s.set_defaults(func=func)

    s = sub.add_parser("sweep", help="search crossing-connected partitions for nonzero counts at degree e")
    s.add_argument("--e", type=int, default=9)
    s.add_argument("--max-n", type=int, default=9)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--max-dim", type=int, default=24, help="skip algebras above this dimension")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PartitionError, FieldError, cp.NoData, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
