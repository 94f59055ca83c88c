#!/usr/bin/env python3
"""Scan crossing-connected partitions for nonzero constituent counts at one degree e.

Exploratory: a hit at e = 9 with n > 2e + 1 would contradict the vanishing
pattern seen for e <= 8, but the scan is limited to small n and makes no claim.
"""

import argparse
import sys

from utcount.cli import main as cli_main


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--e", type=int, default=9)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--max-dim", type=int, default=24)
    args = p.parse_args(argv)
    return cli_main(["sweep", "--e", str(args.e), "--max-n", str(args.max_n), "--q", str(args.q), "--max-dim", str(args.max_dim)])


if __name__ == "__main__":
    sys.exit(main())
