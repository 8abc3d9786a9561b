import itertools
import json

import networkx as nx
import numpy as np
import pytest

from sympgraph.errors import FormatUnsupported, NotSRG
from sympgraph.gf import get_field
from sympgraph.graph import (SympGraph, certify_srg, enumerate_vertices, export, from_graph6,
                             srg_parameters, symplectic_graph, to_graph6, vertex_reps)
from sympgraph.symplectic import FormCtx, form

from conftest import graph

CASES = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2)]


def test_vertex_examples():
    pts = enumerate_vertices(FormCtx(1, get_field(2)))
    assert {p.rep for p in pts} == {(1, 0), (0, 1), (1, 1)}
    assert len(vertex_reps(FormCtx(2, get_field(2)))) == 15
    assert len(vertex_reps(FormCtx(2, get_field(3)))) == 40


@pytest.mark.parametrize("nu,q", CASES + [(3, 3)])
def test_vertices_are_projective_points(nu, q):
    g = graph(nu, q)
    f = g.ctx.field
    assert g.n == srg_parameters(nu, q)[0]
    # every nonzero vector maps to exactly one representative, and scalars agree
    seen = np.bincount(g.point_of[g.point_of >= 0], minlength=g.n)
    assert (seen == q - 1).all()
    for v in range(0, g.n, max(1, g.n // 25)):
        r = g.rep(v)
        assert r[next(i for i, x in enumerate(r) if x)] == 1
        for c in range(1, q):
            assert g.index_of([f.mul(c, x) for x in r]) == v
    assert [tuple(r) for r in g.reps.tolist()] == sorted(tuple(r) for r in g.reps.tolist())


@pytest.mark.parametrize("nu,q", CASES)
def test_adjacency_matches_form(nu, q):
    g = graph(nu, q)
    for u, v in itertools.product(range(g.n), repeat=2):
        assert g.adj[u, v] == (form(g.ctx, g.rep(u), g.rep(v)) != 0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_dimension_two_is_complete(q):
    g = graph(1, q)
    assert np.array_equal(g.adj, 1 - np.eye(q + 1, dtype=np.uint8))


def test_sp42_regular():
    g = graph(2, 2)
    assert g.n == 15 and (g.adj.sum(axis=1) == 8).all()


@pytest.mark.parametrize("nu,q", CASES + [(3, 3)])
def test_srg_certificate(nu, q):
    cert = certify_srg(graph(nu, q))
    n, k, lam, mu = srg_parameters(nu, q)
    assert cert.params == (n, k, lam, mu)
    assert cert.eigenvalues == (k, q ** (nu - 1), -q ** (nu - 1))
    one, fm, gm = cert.multiplicities
    assert one + fm + gm == n and k + fm * q ** (nu - 1) - gm * q ** (nu - 1) == 0
    assert cert.identity_verified and cert.spectrum_verified


@pytest.mark.parametrize("nu,q", [(1, 3), (2, 2), (2, 3), (1, 4)])
def test_spectrum_against_numpy(nu, q):
    cert = certify_srg(graph(nu, q))
    ev = np.round(np.linalg.eigvalsh(graph(nu, q).adj.astype(float))).astype(int)
    counts = {int(x): int(c) for x, c in zip(*np.unique(ev, return_counts=True))}
    want = {}
    for e, m in zip(cert.eigenvalues, cert.multiplicities):
        if m:
            want[e] = want.get(e, 0) + m
    assert counts == want


def test_srg_examples():
    c = certify_srg(graph(2, 2))
    assert c.params == (15, 8, 4, 4) and c.eigenvalues == (8, 2, -2)
    assert c.multiplicities == (1, 5, 9)
    assert certify_srg(graph(1, 3)).params == (4, 3, 2, 2)


def test_not_srg_raises():
    g = graph(2, 2)
    adj = g.adj.copy()
    adj[0, 1] = adj[1, 0] = 1 - adj[0, 1]
    adj.setflags(write=False)
    bad = SympGraph(g.ctx, g.n, g.reps, adj, g.point_of)
    with pytest.raises(NotSRG) as exc:
        certify_srg(bad)
    assert exc.value.pair[0] in (0, 1) or exc.value.pair[1] in (0, 1)


@pytest.mark.parametrize("nu,q", [(2, 3), (3, 2)])
def test_srg_with_networkx(nu, q):
    G = nx.from_numpy_array(graph(nu, q).adj)
    n, k, lam, mu = srg_parameters(nu, q)
    assert nx.is_strongly_regular(G)
    assert nx.intersection_array(G) == ([k, k - lam - 1], [1, mu])


def test_graph6_examples():
    k3 = 1 - np.eye(3, dtype=np.uint8)
    assert to_graph6(k3) == b"Bw"
    assert np.array_equal(from_graph6(b"Bw"), k3)
    g = graph(2, 2)
    s = export(g, "graph6")
    assert s[0] == 15 + 63
    assert np.array_equal(from_graph6(s), g.adj)


@pytest.mark.parametrize("nu,q", CASES + [(3, 3)])
def test_graph6_roundtrip_and_networkx(nu, q):
    g = graph(nu, q)
    s = export(g, "graph6")
    assert np.array_equal(from_graph6(s), g.adj)
    H = nx.from_graph6_bytes(s)
    assert np.array_equal(nx.to_numpy_array(H, nodelist=range(g.n), dtype=np.uint8), g.adj)
    assert nx.to_graph6_bytes(nx.from_numpy_array(g.adj), header=False).strip() == s


def test_dimacs_and_json():
    g = graph(1, 3)
    d = export(g, "dimacs").decode().splitlines()
    assert d[1] == "p edge 4 6"
    assert sorted(d[2:]) == sorted(f"e {i} {j}" for i, j in itertools.combinations(range(1, 5), 2))
    js = json.loads(export(g, "json"))
    assert js["n"] == 4 and len(js["edges"]) == 6
    with pytest.raises(FormatUnsupported):
        export(g, "")
    with pytest.raises(FormatUnsupported):
        export(g, "gml")


@pytest.mark.parametrize("nu,q", [(2, 3), (2, 4)])
def test_threaded_build_identical(nu, q):
    a = symplectic_graph(nu, q, threads=1)
    b = symplectic_graph(nu, q, threads=4)
    assert np.array_equal(a.adj, b.adj) and np.array_equal(a.point_of, b.point_of)
    assert certify_srg(a, threads=3).to_dict() == certify_srg(a).to_dict()


def test_rescaling_invariance(rng):
    """Adjacency does not depend on the representative chosen for a point."""
    g = graph(2, 3)
    f = g.ctx.field
    for _ in range(200):
        u, v = rng.integers(0, g.n, size=2)
        a, b = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        x = [f.mul(a, t) for t in g.rep(int(u))]
        y = [f.mul(b, t) for t in g.rep(int(v))]
        assert (form(g.ctx, x, y) != 0) == bool(g.adj[u, v])


@pytest.mark.parametrize("nu,q", CASES)
def test_common_neighbours_all_pairs(nu, q):
    g = graph(nu, q)
    n, k, lam, _ = srg_parameters(nu, q)
    A = g.adj.astype(np.int64)
    common = A @ A
    off = ~np.eye(n, dtype=bool)
    assert (common[off] == lam).all()
    # vertices adjacent to neither u nor v, by inclusion-exclusion
    neither = (1 - A) @ (1 - A).T
    assert np.array_equal(neither[off], (n - 2 * k + common)[off])
