#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Two workloads, both taken from the hot paths of the classifier suite:

* ``sweep``    — the order-6 mixed-cumulant sweep for the pair of loop edges
                 on the two-loop flower graph (the worst pair of the freeness
                 acceptance criterion);
* ``cumulant`` — a batch of single-tuple cumulants at order 6 over the same
                 monomial table.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import time

from pathprob import Graph, Letter, Mode, letter_monomial
from pathprob import _kernel_py as pure
from pathprob.cumulants import nc_programs
from pathprob.kernel import MonomialTable

try:
    from pathprob import _kernel as compiled
except ImportError:
    compiled = None


def flower_table(mode):
    graph = Graph(["v"], [("a", "v", "v"), ("b", "v", "v")])
    table = MonomialTable(graph)
    for name, fam in (("a", 1), ("b", 2)):
        p = graph.path(name)
        for k in (1, 2, 3):
            for star in (False, True):
                m = letter_monomial(Letter(p ** k, star), mode)
                table.register(m, fam)
    return graph, table


def bench_sweep(backend, table, repeat):
    progs = nc_programs(6)
    best = float("inf")
    checked = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        ids, value, checked = backend.sweep_mixed(
            6, progs, table.monos, table.degrees, table.rsrcs, table.families,
            table.enc.esrc, table.enc.edst, True, {},
        )
        best = min(best, time.perf_counter() - t0)
        assert ids is None, "the flower pair must sweep clean"
    return best, checked


def bench_cumulants(backend, table, repeat, batch=2000):
    rng = random.Random(12)
    progs = nc_programs(6)
    tuples = [
        tuple(rng.randrange(len(table.monos)) for _ in range(6)) for _ in range(batch)
    ]
    best = float("inf")
    for _ in range(repeat):
        memo = {}
        t0 = time.perf_counter()
        for ids in tuples:
            backend.cumulant_of_tuple(
                ids, progs, table.monos, table.degrees, table.rsrcs,
                table.enc.esrc, table.enc.edst, True, memo,
            )
        best = min(best, time.perf_counter() - t0)
    return best, batch


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    _, table = flower_table(Mode.PAPER)
    backends = [("python", pure)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled kernel not available; timing the fallback only\n")

    results = {}
    for name, backend in backends:
        sweep_t, tuples = bench_sweep(backend, table, args.repeat)
        cum_t, batch = bench_cumulants(backend, table, args.repeat)
        results[name] = (sweep_t, cum_t)
        print(f"{name:>7}:  order-6 sweep ({tuples} tuples): {sweep_t:8.3f} s"
              f"   |   {batch} cumulants: {cum_t:8.3f} s")

    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"\nspeedup:  sweep {py[0] / cy[0]:5.1f}x   cumulants {py[1] / cy[1]:5.1f}x")


if __name__ == "__main__":
    main()
