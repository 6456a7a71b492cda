#!/usr/bin/env python3
"""Emit pattern-equivalence classes over the standard map set on the 3x3 grid.

Classes of size > 1 are flagged: a message scrambled by any map in such a
class can be recovered by iterating any other member, so those maps should
not be treated as distinct keys.
"""

import argparse

import numpy as np

from modscramble import ImageGrid, equivalence_classes, standard_family_maps
from modscramble.analysis import dumps_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=3, help="grid side / modulus")
    parser.add_argument("--params", default="1..8", metavar="LO..HI")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    args = parser.parse_args()

    lo, _, hi = args.params.partition("..")
    if args.n > 16:
        # 8-bit pixels cannot stay pairwise distinct past n = 16; repeated
        # values can merge orbit states and over-report equivalence
        print(f"warning: n={args.n} reference grid has repeated pixel values")
    values = np.arange(1, args.n * args.n + 1, dtype=np.int64) % 256
    reference = ImageGrid(values.astype(np.uint8).reshape(args.n, args.n))
    maps = standard_family_maps(int(lo), int(hi))
    report = equivalence_classes(maps, reference, args.n)

    if args.format == "json":
        print(dumps_report(report.to_json_dict()))
        return
    print(f"{len(maps)} maps, {len(report.classes)} classes at n={args.n}:")
    print(report.to_text())
    flagged = report.flagged
    print(f"\n{len(flagged)} classes share a scrambling pattern (size > 1); avoid reusing")
    print("members of one class as if they were independent keys.")


if __name__ == "__main__":
    main()
