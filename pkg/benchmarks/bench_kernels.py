#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Micro-benchmarks hit the row kernels and the pattern-word kernel directly
(both backends are imported side by side); the end-to-end benchmark runs
the full decide+verify+oracle pipeline in subprocesses, once with the
default backend and once with PERMOD_PURE_PYTHON=1.

Usage: python benchmarks/bench_kernels.py [--instances N]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from permod import _kernels_py as pure

try:
    from permod import _speedups as fast
except ImportError:
    fast = None

PIPELINE = r"""
import time
from permod.kernels import BACKEND
from permod.decide import membership, verify_certificate
from permod.oracle import InstanceProfile, random_instance, oracle_membership
from permod.ring import QQ, GF, ZZ

n = {instances}
rings = [QQ, GF(2), GF(3), ZZ]
t0 = time.perf_counter()
for seed in range(n):
    inst = random_instance(seed, InstanceProfile(ring=rings[seed % 4]))
    d = membership(inst.target, list(inst.generators))
    assert verify_certificate(d, inst.target, list(inst.generators))
    oracle_membership(inst.target, list(inst.generators), 10)
print(f"{{BACKEND}}\t{{time.perf_counter() - t0:.3f}}")
"""


def time_call(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_pattern_word(mod, rounds=4000):
    rng = random.Random(0)
    cases = []
    for _ in range(50):
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(2)]
        params = sorted({Fraction(rng.randint(-9, 9)) for _ in range(4)})
        cases.append(
            (
                [c.numerator for c in coords],
                [c.denominator for c in coords],
                [p.numerator for p in params],
                [p.denominator for p in params],
            )
        )

    def run():
        for _ in range(rounds // 50):
            for args in cases:
                mod.pattern_word(*args)

    return time_call(run)


def bench_axpy_q(mod, rounds=3000):
    rng = random.Random(1)
    rows = [
        ({rng.randrange(40): rng.randint(-9, 9) or 1 for _ in range(6)}, rng.randint(1, 8))
        for _ in range(40)
    ]

    def run():
        for _ in range(rounds // 40):
            for src, sden in rows:
                dst = dict(src)
                mod.axpy_q(dst, 3, src, sden, -7, 2)

    return time_call(run)


def bench_axpy_mod(mod, rounds=6000):
    rng = random.Random(2)
    rows = [
        {rng.randrange(40): rng.randint(1, 96) for _ in range(6)} for _ in range(40)
    ]

    def run():
        for _ in range(rounds // 40):
            for src in rows:
                dst = dict(src)
                mod.axpy_mod(dst, src, 55, 97)

    return time_call(run)


def bench_rowpair_int(mod, rounds=3000):
    rng = random.Random(3)
    rows = [
        ({rng.randrange(40): rng.randint(-9, 9) or 1 for _ in range(6)},
         {rng.randrange(40): rng.randint(-9, 9) or 1 for _ in range(6)})
        for _ in range(40)
    ]

    def run():
        for _ in range(rounds // 40):
            for ra, rb in rows:
                mod.rowpair_int(dict(ra), dict(rb), 2, -3, 5, 1)

    return time_call(run)


def pipeline(env_pure: bool, instances: int) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("PERMOD_PURE_PYTHON", None)
    if env_pure:
        env["PERMOD_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", PIPELINE.format(instances=instances)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    ).stdout.strip()
    backend, secs = out.split("\t")
    return backend, float(secs)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--instances", type=int, default=150)
    args = ap.parse_args()

    if fast is None:
        print("compiled extension not built; run: python setup.py build_ext --inplace")
        return 1

    print(f"{'kernel':<16}{'pure (s)':>10}{'compiled (s)':>14}{'speedup':>9}")
    for name, bench in [
        ("pattern_word", bench_pattern_word),
        ("axpy_q", bench_axpy_q),
        ("axpy_mod", bench_axpy_mod),
        ("rowpair_int", bench_rowpair_int),
    ]:
        tp = bench(pure)
        tf = bench(fast)
        print(f"{name:<16}{tp:>10.4f}{tf:>14.4f}{tp / tf:>8.2f}x")

    print()
    backend, tf = pipeline(False, args.instances)
    assert backend == "compiled", "default backend should be the extension here"
    _, tp = pipeline(True, args.instances)
    print(f"{'pipeline':<16}{tp:>10.3f}{tf:>14.3f}{tp / tf:>8.2f}x"
          f"   ({args.instances} decide+verify+oracle instances)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
