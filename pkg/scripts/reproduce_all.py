#!/usr/bin/env python3
"""Run every verification suite at its default parameters and write a JSON report."""

import argparse
import json
import sys
import time

from utcount.verify import SUITES, run_suite

ORDER = [
    "table1", "appendix", "oracle-un", "ex13", "lambda13", "factorization", "fact-identities",
    "maxcross", "prop-eval", "congruence", "structure", "nonneg", "algebra",
]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--only", nargs="*", choices=sorted(SUITES), help="run a subset of suites")
    p.add_argument("--out", help="write the combined JSON report here")
    args = p.parse_args(argv)

    names = args.only or ORDER
    reports, t0 = [], time.perf_counter()
    for name in names:
        rep = run_suite(name)
        reports.append(rep.as_json())
        print(rep.lines()[-1], flush=True)
        for c in rep.failures():
            print(f"    FAIL  {c.name}  [{c.detail}]")
    ok = all(r["ok"] for r in reports)
    print(f"all suites: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:.1f}s)")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"ok": ok, "suites": reports}, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
