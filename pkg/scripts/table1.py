#!/usr/bin/env python3
"""Print the all / atomic / connected / crossing-connected counts and compare with the stored table."""

import argparse
import sys
import time

from utcount.countpoly import load_table1
from utcount.setpartition import count_table


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=12)
    args = p.parse_args(argv)

    ref = load_table1()
    bad = 0
    print(f"{'n':>3} {'all':>10} {'atomic':>10} {'connected':>10} {'cc':>8}  stored")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        row = count_table(n)
        match = ref.get(n)
        flag = "-" if match is None else ("ok" if match == row else "MISMATCH")
        bad += flag == "MISMATCH"
        print(f"{n:>3} {row[0]:>10} {row[1]:>10} {row[2]:>10} {row[3]:>8}  {flag}  ({time.perf_counter() - t0:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
