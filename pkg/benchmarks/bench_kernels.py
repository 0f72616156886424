#!/usr/bin/env python3
"""Benchmark the compiled word-scan kernel against its pure-Python twin.

Also cross-checks that both backends return bit-identical results on every
benchmarked workload, since the golden-file tests depend on that.

Usage:
    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from funnelgroup import mobius, words
from funnelgroup._kernels import backends
from funnelgroup.schottky import SchottkyConfig, build_group


def scan_inputs(pairs):
    group = build_group(SchottkyConfig.from_pairs(pairs))
    coeffs, orientations = words.letter_arrays(group.generators)
    letters = group.letters()
    n = len(letters)
    targets = np.empty((n, 2))
    fixed = np.empty(n)
    for slot in range(n):
        iv = group.config.target_interval(words.index_to_signed(slot))
        targets[slot] = (iv.lo, iv.hi)
        fixed[slot] = mobius.axis(letters[slot]).attracting
    return coeffs, orientations, targets, fixed


WORKLOADS = [
    ("scan rank2 depth10", [(2, 8), (10, 12)],
     lambda impl, c, o, t, f: impl.hyperbolic_freeness_scan(c, o, 10, 1e-9)),
    ("scan rank3 depth7", [(1, 3), (5, 6), (8, 11)],
     lambda impl, c, o, t, f: impl.hyperbolic_freeness_scan(c, o, 7, 1e-9)),
    ("refine rank2 depth11", [(2, 8), (10, 12)],
     lambda impl, c, o, t, f: impl.refinement_scan(c, t, f, 11)),
    ("refine rank3 depth6", [(1, 3), (5, 6), (8, 11)],
     lambda impl, c, o, t, f: impl.refinement_scan(c, t, f, 6)),
]


def results_equal(a, b):
    if isinstance(a, tuple):
        return all(results_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, float):
        return a == b
    return a == b


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = backends()
    if "compiled" not in impls:
        print("compiled kernel not available; build it with `pip install -e .`")
        return 1

    print(f"{'workload':<24} {'pure':>10} {'compiled':>10} {'speedup':>9}  identical")
    for name, pairs, call in WORKLOADS:
        c, o, t, f = scan_inputs(pairs)
        timings = {}
        outputs = {}
        for backend, impl in impls.items():
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                out = call(impl, c, o, t, f)
                best = min(best, time.perf_counter() - start)
            timings[backend] = best
            outputs[backend] = out
        same = results_equal(outputs["pure"], outputs["compiled"])
        print(
            f"{name:<24} {timings['pure']*1e3:>8.1f}ms {timings['compiled']*1e3:>8.1f}ms "
            f"{timings['pure']/timings['compiled']:>8.1f}x  {same}"
        )
        if not same:
            raise SystemExit(f"backend mismatch on {name}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
