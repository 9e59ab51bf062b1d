#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Workloads: full-family structural scans (place enumeration, group
tables, minimal-vector enumeration, HNF, determinant, decompositions)
and the per-curve sampling batches (decoder, membership, factorization)
on prebuilt inputs, so only kernel time is measured where possible.

Usage: python benchmarks/bench_kernels.py [--scan-prime 7] [--samples 20000]
"""

import argparse
import time

import numpy as np

from eclat._kernel import HAVE_SPEEDUPS, get_kernel
from eclat.analysis import iter_curve_coeffs


def time_call(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scan-prime", type=int, default=7)
    ap.add_argument("--samples", type=int, default=20_000)
    args = ap.parse_args()

    if not HAVE_SPEEDUPS:
        print("compiled extension not available; benchmarking fallback only")
    fast = get_kernel(pure=False)
    pure = get_kernel(pure=True)
    kern0 = fast if HAVE_SPEEDUPS else pure

    # shared inputs for the batch workloads (a largest-n curve over GF(13))
    p, coeffs = 13, (1, 0, 0, 1)
    s = kern0.structural_summary(p, *coeffs)
    add, orders = s["add"], s["orders"]
    mult_flat, mult_off = s["mult_flat"], s["mult_off"]
    n = s["n"]
    rng = np.random.default_rng(0)
    span = rng.uniform(-10, 10, size=(args.samples, n))
    span -= span.mean(axis=1, keepdims=True)
    ints = rng.integers(-5, 6, size=(args.samples, n))
    ints[:, -1] -= ints.sum(axis=1)
    pts = kern0.group_point_batch(add, orders, mult_flat, mult_off, ints)
    rows = np.arange(args.samples)
    principal = ints.copy()
    principal[rows[pts != 0], pts[pts != 0]] -= 1
    principal[:, 0] -= principal.sum(axis=1)
    minimal_rows = kern0.minimal_vector_matrix(add)

    def scan(k):
        for c in iter_curve_coeffs(args.scan_prime):
            k.structural_summary(args.scan_prime, *c)

    workloads = [
        (
            f"structural scan, all curves over GF({args.scan_prime})",
            lambda k: scan(k),
        ),
        (
            f"decode batch, {args.samples} span vectors (n={n})",
            lambda k: k.decode_batch(add, orders, mult_flat, mult_off, span),
        ),
        (
            f"group-sum batch, {args.samples} integer vectors",
            lambda k: k.group_point_batch(add, orders, mult_flat, mult_off, ints),
        ),
        (
            f"factorization check, {args.samples} principal divisors",
            lambda k: k.factor_check_batch(
                add, s["neg"], orders, mult_flat, mult_off, principal
            ),
        ),
        (
            f"HNF of the {minimal_rows.shape[0]}-row minimal-vector matrix",
            lambda k: k.hnf_i64(minimal_rows),
        ),
    ]

    name_w = max(len(name) for name, _ in workloads)
    print(f"{'workload':<{name_w}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, fn in workloads:
        t_fast = time_call(lambda: fn(fast)) if HAVE_SPEEDUPS else float("nan")
        t_pure = time_call(lambda: fn(pure))
        ratio = t_pure / t_fast if HAVE_SPEEDUPS else float("nan")
        print(f"{name:<{name_w}}  {t_fast:>9.4f}s  {t_pure:>9.4f}s  {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
