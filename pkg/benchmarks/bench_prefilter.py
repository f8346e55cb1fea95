#!/usr/bin/env python3
"""Benchmark the compiled pre-filter kernel against the pure Python one.

Feeds both kernels the exact candidate stream of a sweep and times them on
identical chunks, then times the full sweep with each kernel forced.  Run
from a checkout::

    python benchmarks/bench_prefilter.py
    python benchmarks/bench_prefilter.py --m 2 --n 3 --bound 5 --mode T
"""

import argparse
import pathlib
import sys
import time
from array import array

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import rigidpow.prefilter as prefilter
from rigidpow.search import SearchSpec, row_universe, sweep, _shard_rows


def collect_candidates(spec, limit):
    universe = row_universe(spec.n, spec.bound, spec.mode)
    chunk = []
    for rows in _shard_rows(universe, spec.m, 0, 1):
        chunk.append(rows)
        if len(chunk) >= limit:
            break
    return chunk


def flatten(candidates, m):
    weights, signs = array("q"), array("q")
    for rows in candidates:
        for row in rows:
            weights.extend(row.weights)
            signs.append(row.sign)
    return weights, signs


def time_kernel(kernel, weights, signs, m, n, count, points, repeats=5):
    mask = bytearray(count)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        kernel(weights, signs, m, n, count, points, mask)
        best = min(best, time.perf_counter() - start)
    return best, mask


def time_sweep_with(kernel_name, spec):
    saved = prefilter.filter_chunk_fast
    if kernel_name == "pure":
        prefilter.filter_chunk_fast = None
    try:
        start = time.perf_counter()
        report = sweep(spec)
        return time.perf_counter() - start, len(report.found)
    finally:
        prefilter.filter_chunk_fast = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--bound", type=int, default=8)
    parser.add_argument("--mode", choices=("T", "L"), default="L")
    parser.add_argument("--count", type=int, default=50_000,
                        help="candidates to feed the raw-kernel comparison")
    args = parser.parse_args()

    spec = SearchSpec(m=args.m, n=args.n, bound=args.bound, mode=args.mode)
    points = array("q", prefilter.sample_points(spec.mode))

    print(f"workload: m={spec.m} n={spec.n} bound={spec.bound} mode={spec.mode}")
    print(f"compiled kernel available: {prefilter.HAVE_COMPILED}")
    print(f"int128 headroom: {prefilter.int128_headroom(spec.m, spec.n, spec.bound, points)}")
    print()

    candidates = collect_candidates(spec, args.count)
    count = len(candidates)
    weights, signs = flatten(candidates, spec.m)

    rows = []
    pure_time, pure_mask = time_kernel(
        prefilter.filter_chunk_pure, weights, signs, spec.m, spec.n, count, points
    )
    rows.append(("pure", pure_time, count / pure_time))
    if prefilter.HAVE_COMPILED:
        fast_time, fast_mask = time_kernel(
            prefilter.filter_chunk_fast, weights, signs, spec.m, spec.n, count, points
        )
        rows.append(("compiled", fast_time, count / fast_time))
        if fast_mask != pure_mask:
            print("ERROR: kernels disagree on this workload")
            return 1

    print(f"raw kernel, {count} candidates (best of 5):")
    print(f"  {'kernel':<10} {'time':>10} {'cand/s':>14} {'speedup':>9}")
    for name, seconds, rate in rows:
        speedup = pure_time / seconds
        print(f"  {name:<10} {seconds:>9.4f}s {rate:>14,.0f} {speedup:>8.1f}x")

    print()
    print("end-to-end sweep:")
    pure_total, found = time_sweep_with("pure", spec)
    print(f"  pure      {pure_total:>9.4f}s  ({found} finds)")
    if prefilter.HAVE_COMPILED:
        fast_total, found_fast = time_sweep_with("compiled", spec)
        print(f"  compiled  {fast_total:>9.4f}s  ({found_fast} finds, {pure_total / fast_total:.1f}x)")
        if found_fast != found:
            print("ERROR: sweeps disagree")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
