#!/usr/bin/env python3
"""Classification sweep over lens space pairs.

For each prime p requested, runs the three predicates (homotopy equivalence,
simple homotopy equivalence, torsion distinguishability) over every coprime
pair (q, q2) and cross-checks that torsion detects exactly the pairs that
are not simple homotopy equivalent.  Prints the interesting cells: pairs
that are homotopy equivalent but torsion-distinguished.
"""
import argparse
import sys
from math import gcd

from torsionkit.lensspaces import (
    homotopy_equivalent,
    lens_params,
    simple_homotopy_equivalent,
    torsion_distinguish,
)


def sweep(p: int) -> tuple[int, list[tuple[int, int, int]]]:
    mismatches = 0
    interesting = []
    for q in range(1, p):
        if gcd(q, p) != 1:
            continue
        for q2 in range(q, p):
            if gcd(q2, p) != 1:
                continue
            a, b = lens_params(p, q), lens_params(p, q2)
            he, m = homotopy_equivalent(a, b)
            se, _ = simple_homotopy_equivalent(a, b)
            td, _ = torsion_distinguish(a, b)
            if td == se:
                mismatches += 1
            if he and not se:
                interesting.append((q, q2, m))
    return mismatches, interesting


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--primes", type=int, nargs="+", default=[5, 7, 11, 13, 17]
    )
    args = parser.parse_args()
    total_mismatches = 0
    for p in args.primes:
        mismatches, interesting = sweep(p)
        total_mismatches += mismatches
        print(f"p = {p}: {len(interesting)} homotopy-equivalent pairs that torsion separates")
        for q, q2, m in interesting:
            print(f"  L({p},{q}) ~ L({p},{q2})  (m={m})  but NOT simple homotopy equivalent")
        if mismatches:
            print(f"  !! {mismatches} cross-check failures (torsion vs arithmetic)")
    print()
    if total_mismatches:
        print("FAILED: torsion disagreed with the arithmetic criterion somewhere")
        return 1
    print("cross-check clean: torsion = not(q2 = +-q^+-1) on every pair")
    return 0


if __name__ == "__main__":
    sys.exit(main())
