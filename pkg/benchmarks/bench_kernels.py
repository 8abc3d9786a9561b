"""Compiled vs pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time
from contextlib import contextmanager

import numpy as np

from sympgraph import _kernels_py, search
from sympgraph.graph import symplectic_graph
from sympgraph.search import automorphism_group, initial_partition

try:
    from sympgraph import _ckernels
except ImportError:
    _ckernels = None


@contextmanager
def backend(mod):
    saved = search.refine, search.is_automorphism
    search.refine, search.is_automorphism = mod.refine, mod.is_automorphism
    try:
        yield
    finally:
        search.refine, search.is_automorphism = saved


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    g43, g44, g62 = symplectic_graph(2, 3), symplectic_graph(2, 4), symplectic_graph(3, 2)
    rng = np.random.default_rng(0)
    rand = (rng.random((60, 60)) < 0.35).astype(np.uint8)
    rand = np.ascontiguousarray(np.triu(rand, 1) + np.triu(rand, 1).T)

    def refine_job(mod, adj):
        n = adj.shape[0]

        def run():
            for v in range(n):
                mod.refine(adj, *initial_partition(n, (v,)))
        return run

    def mis_job(mod, adj):
        return lambda: mod.max_independent_set(adj, record_leaves=True)

    def search_job(mod, adj):
        def run():
            with backend(mod):
                automorphism_group(adj)
        return run

    return [
        ("refine x n, Sp(4,4)", refine_job, g44.adj),
        ("max independent set, Sp(4,3)", mis_job, g43.adj),
        ("max independent set, G(60, .35)", mis_job, rand),
        ("automorphism search, Sp(4,3)", search_job, g43.adj),
        ("automorphism search, Sp(6,2)", search_job, g62.adj),
        ("automorphism search, Sp(4,4)", search_job, g44.adj),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'workload':34s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, job, adj in workloads():
        tp = best_of(job(_kernels_py, adj), args.repeat)
        if _ckernels is None:
            print(f"{name:34s} {tp:10.4f}")
            continue
        tc = best_of(job(_ckernels, adj), args.repeat)
        print(f"{name:34s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
