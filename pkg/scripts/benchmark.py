#!/usr/bin/env python3
"""Time patch construction, verification, and arm extraction as rings grow.

Usage: python3 scripts/benchmark.py [max_rings]
"""

import sys
import time

from pentile import assemble_patch, dihedral_params, hexagon_level, spiral_arms, verify


def main():
    max_rings = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    n = 7
    print(f"{'rings':>5} {'tiles':>6} {'build s':>8} {'verify s':>9} {'arms s':>7}")
    for rings in range(1, max_rings + 1):
        t0 = time.perf_counter()
        patch = assemble_patch(dihedral_params(n), rings)
        t1 = time.perf_counter()
        report = verify(patch)
        t2 = time.perf_counter()
        spiral_arms(hexagon_level(patch)) if rings >= 2 else None
        t3 = time.perf_counter()
        flag = "" if report.passed else "  VERIFY FAILED"
        print(
            f"{rings:>5} {len(patch.tiles):>6} {t1 - t0:>8.3f} "
            f"{t2 - t1:>9.3f} {t3 - t2:>7.3f}{flag}"
        )


if __name__ == "__main__":
    main()
