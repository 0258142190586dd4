#!/usr/bin/env python3
"""Sweep the orbit-size filter over the classical families.

Prints, for each family and rank, which fundamental weights survive the
bound (orbit - 1)^2 <= 4 dim + 1, to watch the families stabilize.

Usage:  python scripts/orbit_filter_sweep.py [max_rank]
"""

import sys

from sphersub.classifier import lemma6_filter, orbit_max
from sphersub.rootsys import SimpleType, dim_group


def main() -> int:
    max_rank = int(sys.argv[1]) if len(sys.argv) > 1 else 30
    families = (("A", 1), ("B", 2), ("C", 3), ("D", 4))
    for fam, start in families:
        previous = None
        for n in range(start, max_rank + 1):
            t = SimpleType(fam, n)
            passing = lemma6_filter(t)
            desc = ", ".join(f"w{i}(|orbit|={s})" for i, s in passing) or "none"
            marker = ""
            indices = tuple(i for i, _ in passing)
            # the stable A-family pattern is {w1, wn}, so compare up to n
            key = tuple("n" if fam == "A" and i == n else i for i in indices)
            if previous is not None and key == previous:
                marker = "  (stable)"
            previous = key
            print(f"{t!s:>4}  dim={dim_group(t):5d}  cap={orbit_max(dim_group(t)):4d}  {desc}{marker}")
        print()
    for fam, n in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
        t = SimpleType(fam, n)
        passing = lemma6_filter(t)
        desc = ", ".join(f"w{i}(|orbit|={s})" for i, s in passing) or "none"
        print(f"{t!s:>4}  dim={dim_group(t):5d}  cap={orbit_max(dim_group(t)):4d}  {desc}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
