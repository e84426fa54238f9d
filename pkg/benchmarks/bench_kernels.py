#!/usr/bin/env python3
"""Benchmark the batch fitness kernels: numba JIT vs pure numpy.

Usage:
    python benchmarks/bench_kernels.py [--pop 512 --routes 64 --iters 200]

The first numba call includes compilation; a warmup run absorbs it. The same
inputs go through both implementations and results are cross-checked before
timing, so the numbers compare identical arithmetic.
"""

import argparse
import time

import numpy as np

from prefloop.bundled import get_map
from prefloop.complaints import ComplaintLedger, SpecificDiscontent, record
from prefloop.fitness import EPS_OPT, FitnessContext, FitnessParams
from prefloop.ga import GAConfig, adapt_preferences
from prefloop.kernels import _batch_fitness_loops, _batch_fitness_numpy
from prefloop.planner import enumerate_routes
from prefloop.prefs import make_preference

try:
    from numba import njit

    HAS_NUMBA = True
    _jitted = njit(cache=True)(_batch_fitness_loops)
except ImportError:  # pure-numpy environment
    HAS_NUMBA = False
    _jitted = None


def timeit(fn, *args, iters=200, warmup=3):
    for _ in range(warmup):
        fn(*args)
    times = []
    for _ in range(iters):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def bench_batch(pop_size, n_routes, iters):
    rng = np.random.default_rng(0)
    pop = rng.dirichlet(np.ones(3), size=pop_size)
    route_u = rng.random((n_routes, 3))
    complained = (rng.random(n_routes) < 0.25).astype(np.uint8)
    p_prev = np.array([0.333, 0.333, 0.334])
    prev_norm = float(np.sqrt((p_prev * p_prev).sum()))
    args = (pop, route_u, complained, p_prev, prev_norm,
            1, 0, 0, 0.333, 0.15, 0.0, EPS_OPT,
            1.0, 1.0, 1.0, -100.0, -1.0)

    t_np = timeit(_batch_fitness_numpy, *args, iters=iters)
    print(f"  numpy : {t_np * 1e6:9.1f} us/call")
    if not HAS_NUMBA:
        print("  numba : unavailable")
        return
    mismatch = np.max(np.abs(_jitted(*args) - _batch_fitness_numpy(*args)))
    assert mismatch <= 1e-12, f"backends disagree by {mismatch}"
    t_nb = timeit(_jitted, *args, iters=iters)
    print(f"  numba : {t_nb * 1e6:9.1f} us/call")
    print(f"  speedup: {t_np / t_nb:.2f}x")


def bench_adaptation():
    graph = get_map("scenario1")
    p_prev = make_preference([0.333, 0.333, 0.334])
    route = enumerate_routes(graph)[0]
    ledger = record(ComplaintLedger(), SpecificDiscontent(route=route, attr=1), graph)
    ctx = FitnessContext(graph=graph, ledger=ledger, p_prev=p_prev, params=FitnessParams())
    t = timeit(lambda: adapt_preferences(ctx, GAConfig(seed=1)), iters=20, warmup=2)
    from prefloop.kernels import backend_name

    print(f"  full adaptation run ({backend_name()} backend): {t * 1e3:.1f} ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--pop", type=int, default=512)
    parser.add_argument("--routes", type=int, default=64)
    parser.add_argument("--iters", type=int, default=200)
    args = parser.parse_args()

    print(f"batch fitness, bundled-scale (pop=50, routes=4, iters={args.iters}):")
    bench_batch(50, 4, args.iters)
    print(f"batch fitness, synthetic (pop={args.pop}, routes={args.routes}, iters={args.iters}):")
    bench_batch(args.pop, args.routes, args.iters)
    print("end-to-end:")
    bench_adaptation()


if __name__ == "__main__":
    main()
