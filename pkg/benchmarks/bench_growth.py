#!/usr/bin/env python3
"""Measure how the decision cost grows with the support size.

There is no complexity bound to cite: the number of placed
representatives grows combinatorially with the target's support chain,
so this script records the measured counts and wall times instead.  The
instance family is a single alternating-sign chain generator of m points
and a translated copy of it as the target (always a member, decided over
the m parameter points of the target support).

Usage: python benchmarks/bench_growth.py [--max-support 7]
"""

import argparse
import sys
import time
from fractions import Fraction

from permod.decide import membership, verify_certificate
from permod.pmod import ModVector, omega
from permod.ring import QQ


def chain_vector(start: int, m: int) -> ModVector:
    items = [((Fraction(start + i),), (-1) ** i) for i in range(m)]
    return ModVector.from_terms(QQ, 1, items)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-support", type=int, default=7)
    args = ap.parse_args()

    print(f"{'m':>3}{'reps':>9}{'keys':>7}{'decide (s)':>12}{'verify (s)':>12}")
    for m in range(1, args.max_support + 1):
        gen = chain_vector(0, m)
        target = chain_vector(100, m)
        t0 = time.perf_counter()
        d = membership(target, [gen])
        t1 = time.perf_counter()
        ok = verify_certificate(d, target, [gen])
        t2 = time.perf_counter()
        assert d.member and ok
        # occurring pattern keys, recomputed from the certificate reps
        keyset = set()
        for _, rep in d.certificate.terms:
            keyset.update(omega(rep, d.param_set).entry_dict())
        print(f"{m:>3}{d.rep_count:>9}{len(keyset):>7}{t1 - t0:>12.3f}{t2 - t1:>12.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
