#!/usr/bin/env python3
"""Regenerate the depth-k pair-count table as TSV.

Rows k = 2..kmax of |TCNC_2^{k,k}(n)| for even n <= nmax, plus the
stabilized row once consecutive depths agree.

Usage: python3 scripts/make_table.py [--kmax 6] [--nmax 12] [-o out.tsv]
"""

import argparse
import sys

from ncfree.scalar import table_to_tsv, tcnc_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()
    if args.nmax % 2 or args.nmax < 2 or args.kmax < 2:
        ap.error("need even --nmax >= 2 and --kmax >= 2")
    tsv = table_to_tsv(tcnc_table(args.kmax, args.nmax // 2))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(tsv)
    else:
        sys.stdout.write(tsv)


if __name__ == "__main__":
    main()
