"""The compiled kernels must agree exactly with the pure-Python reference."""
import os
import subprocess
import sys

import numpy as np
import pytest

from sympgraph import _kernels_py as ref
from sympgraph import kernels
from sympgraph.search import automorphism_group, initial_partition

from conftest import graph

try:
    from sympgraph import _ckernels as fast
except ImportError:  # pragma: no cover - extension not built
    fast = None

needs_ext = pytest.mark.skipif(fast is None, reason="compiled extension not built")


def _random_graph(rng, n, p):
    a = (rng.random((n, n)) < p).astype(np.uint8)
    a = np.triu(a, 1)
    return np.ascontiguousarray(a + a.T)


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    env = dict(os.environ, SYMPGRAPH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import sympgraph.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@pytest.mark.parametrize("nu,q", [(1, 4), (2, 2), (2, 3), (3, 2), (2, 4)])
def test_refine_agrees_on_symplectic_graphs(nu, q):
    adj = graph(nu, q).adj
    n = adj.shape[0]
    for fixed in [(), (0,), (0, 5), (3, 1, 7)]:
        lab, starts = initial_partition(n, [v for v in fixed if v < n])
        a = ref.refine(adj, lab, starts)
        b = fast.refine(adj, lab, starts)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))


@needs_ext
def test_refine_agrees_on_random_graphs(rng):
    for _ in range(40):
        n = int(rng.integers(2, 60))
        adj = _random_graph(rng, n, rng.random())
        lab, starts = initial_partition(n, tuple(rng.choice(n, size=int(rng.integers(0, 3)),
                                                            replace=False).tolist()))
        a, b = ref.refine(adj, lab, starts), fast.refine(adj, lab, starts)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))


def test_refine_is_equitable(rng):
    for _ in range(20):
        n = int(rng.integers(2, 40))
        adj = _random_graph(rng, n, 0.3)
        lab, starts, _ = kernels.refine(adj, *initial_partition(n))
        bounds = list(starts) + [n]
        cells = [lab[bounds[i]:bounds[i + 1]] for i in range(len(starts))]
        for c in cells:
            for d in cells:
                counts = adj[np.ix_(c, d)].sum(axis=1)
                assert len(set(counts.tolist())) == 1


@needs_ext
def test_is_automorphism_agrees(rng):
    adj = graph(2, 3).adj
    res = automorphism_group(adj)
    for gperm in res.generators:
        assert ref.is_automorphism(adj, gperm) and fast.is_automorphism(adj, gperm)
    for _ in range(50):
        p = rng.permutation(adj.shape[0]).astype(np.int32)
        assert ref.is_automorphism(adj, p) == fast.is_automorphism(adj, p)
    bad = np.zeros(adj.shape[0], dtype=np.int32)
    assert not ref.is_automorphism(adj, bad) and not fast.is_automorphism(adj, bad)


@needs_ext
@pytest.mark.parametrize("n,p", [(10, 0.3), (25, 0.5), (40, 0.2), (60, 0.5), (70, 0.8)])
def test_mis_agrees(rng, n, p):
    for _ in range(5):
        adj = _random_graph(rng, n, p)
        a, la = ref.max_independent_set(adj, record_leaves=True)
        b, lb = fast.max_independent_set(adj, record_leaves=True)
        assert list(a) == list(b)
        assert [list(x) for x in la] == [list(x) for x in lb]


def test_mis_brute_force(rng):
    from itertools import combinations
    for _ in range(15):
        n = int(rng.integers(1, 13))
        adj = _random_graph(rng, n, 0.4)
        best, _ = kernels.max_independent_set(adj)
        size = max(k for k in range(n + 1) for c in combinations(range(n), k)
                   if not adj[np.ix_(c, c)].any())
        least = min(list(c) for c in combinations(range(n), size) if not adj[np.ix_(c, c)].any())
        assert list(best) == least
