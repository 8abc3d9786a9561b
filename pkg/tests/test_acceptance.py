"""Acceptance criteria 1-10, one PASS/FAIL line each."""
import subprocess
import sys
import time

import numpy as np

from sympgraph import aut
from sympgraph.certify import aut_certificate, characterization_trials
from sympgraph.graph import certify_srg, srg_parameters, symplectic_graph
from sympgraph.search import enumerate_group
from sympgraph.spread import (EXACT_ALPHA_LIMIT, build_spread, chromatic_certificate,
                              coloring_from_spread, cross_class_degree)
from sympgraph.symplectic import gsp_class

CASES = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2)]


def test_criterion_1_srg_identity(report):
    t0 = time.perf_counter()
    bad = []
    for nu, q in CASES:
        g = symplectic_graph(nu, q)
        cert = certify_srg(g)
        if not cert.identity_verified or cert.params != srg_parameters(nu, q):
            bad.append((nu, q))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 10,
           f"A^2 = kI + lam A + mu(J - I - A) exact on {len(CASES)} cases in {dt:.2f}s; bad={bad}")


def test_criterion_2_spectrum(report):
    bad = []
    for nu, q in CASES:
        cert = certify_srg(symplectic_graph(nu, q))
        n, k = cert.n, cert.k
        r = q ** (nu - 1)
        _, fm, gm = cert.multiplicities
        ok = (cert.eigenvalues == (q ** (2 * nu - 1), r, -r) and 1 + fm + gm == n
              and k + fm * r - gm * r == 0 and cert.spectrum_verified)
        if not ok:
            bad.append((nu, q))
    report(2, not bad, f"eigenvalues (q^(2nu-1), q^(nu-1), -q^(nu-1)) with 1+f+g=n, k+fr+gs=0; bad={bad}")


def test_criterion_3_coloring(report):
    t0 = time.perf_counter()
    bad = []
    for nu, q in CASES:
        g = symplectic_graph(nu, q)
        c = coloring_from_spread(g, build_spread(g.ctx))
        sizes = {len(x) for x in c.classes}
        table = cross_class_degree(g, c)  # raises on any wrong count
        proper = all(c.color[u] != c.color[v] for u, v in g.edges())
        off = np.ones_like(table, dtype=bool)
        off[np.arange(g.n), c.color] = False
        ok = (c.num_colors == q ** nu + 1 and sizes == {(q ** nu - 1) // (q - 1)} and proper
              and (table[off] == q ** (nu - 1)).all())
        if not ok:
            bad.append((nu, q))
    dt = time.perf_counter() - t0
    report(3, not bad and dt < 5,
           f"spread colouring, q^nu+1 classes, cross-degree q^(nu-1) on all cases in {dt:.2f}s; bad={bad}")


def test_criterion_4_chromatic_number(report):
    results = {}
    t0 = time.perf_counter()
    for nu, q in CASES:
        g = symplectic_graph(nu, q)
        if g.n > EXACT_ALPHA_LIMIT:
            continue
        cert = chromatic_certificate(g, coloring_from_spread(g, build_spread(g.ctx)))
        results[(nu, q)] = (cert.chi, cert.alpha, cert.alpha_method)
    dt = time.perf_counter() - t0
    ok = (results[(2, 2)][:2] == (5, 3) and results[(2, 3)][:2] == (10, 4)
          and all(chi == q ** nu + 1 and alpha == (q ** nu - 1) // (q - 1)
                  and method == "branch-and-bound"
                  for (nu, q), (chi, alpha, method) in results.items())
          and dt < 60)
    report(4, ok, f"chi and exact alpha by branch-and-bound for n <= 40: {results} in {dt:.2f}s")


def test_criterion_5_characterization(report):
    rng = np.random.default_rng(0)
    out = {}
    for nu, q in CASES:
        g = symplectic_graph(nu, q)
        out[(nu, q)] = characterization_trials(g, rng, 1000)
    ce = sum(v["counterexamples"] for v in out.values())
    both = all(v["gsp"] > 0 for v in out.values()) and \
        all(v["not_gsp"] > 0 for (nu, _), v in out.items() if nu > 1)
    report(5, ce == 0 and both,
           f"1000 random nonsingular + 1000 GSp matrices per case, counterexamples={ce}")


def test_criterion_6_order_agreement(report):
    expected = {(1, 3): 24, (1, 4): 120, (1, 5): 720, (2, 2): 720, (2, 3): 51840,
                (3, 2): 1_451_520, (2, 4): 1_958_400}
    got, times = {}, {}
    for (nu, q) in expected:
        g = symplectic_graph(nu, q)
        t0 = time.perf_counter()
        got[(nu, q)] = aut.aut_search(g)[0]
        times[(nu, q)] = time.perf_counter() - t0
    ok = all(got[k] == v == aut.aut_order_formula(*k) for k, v in expected.items())
    report(6, ok and times[(2, 3)] < 120,
           f"search = formula on {len(expected)} graphs incl. stretch Sp(6,2), Sp(4,4); "
           f"Sp(4,3) search {times[(2, 3)]:.3f}s")


def test_criterion_7_q2(report):
    g = symplectic_graph(2, 2)
    _, gens, _ = aut.aut_search(g)
    group = enumerate_group([x.perm for x in gens], g.n)
    mats = set()
    for tau in group:
        T = aut.q2_matrix_recover(g, tau)  # raises AdditivityFail if additivity breaks
        assert gsp_class(g.ctx, T).kind == "Sp"
        mats.add(T.tobytes())
    report(7, len(group) == 720 and len(mats) == 720,
           f"{len(mats)} distinct Sp4(F2) matrices from {len(group)} searched automorphisms")


def test_criterion_8_roundtrip(report):
    res = {}
    for nu, q in [(2, 3), (2, 4)]:
        cert = aut_certificate(nu, q, mode="decompose-roundtrip", seed=0, samples=10_000)
        res[(nu, q)] = cert
    ok = all(c["decompositions_checked"] >= 10_000 and c["roundtrip_failures"] == 0
             and c["frobenius_powers"] and c["failures"] == 0 for c in res.values())
    detail = ", ".join(f"Sp({2 * nu},{q}): {c['decompositions_checked']} roundtrips, "
                       f"{c['pi_families_checked']} pi families"
                       for (nu, q), c in res.items())
    report(8, ok, detail)


def test_criterion_9_intersection(report):
    got = {(nu, q): aut.psp_e_intersection(symplectic_graph(nu, q))
           for nu, q in [(1, 3), (1, 5), (2, 3)]}
    ok = all(v * 2 == (q - 1) ** nu for (nu, q), v in got.items())
    report(9, ok, f"|PSp cap E| = (q-1)^nu / 2: {got}")


def _suite(tmp, threads):
    """Write every certificate for a fixed seed; return {name: bytes}."""
    out = {}
    jobs = [("certify", nu, q, []) for nu, q in CASES]
    jobs += [("color", nu, q, []) for nu, q in CASES]
    jobs += [("aut", nu, q, ["--samples", "1000"]) for nu, q in [(1, 4), (2, 2), (2, 3)]]
    for cmd, nu, q, extra in jobs:
        path = tmp / f"{cmd}_{nu}_{q}_{threads}.json"
        r = subprocess.run([sys.executable, "-m", "sympgraph", cmd, "--nu", str(nu), "--q", str(q),
                            "--seed", "0", "--threads", str(threads), "--out", str(path), *extra],
                           capture_output=True)
        assert r.returncode == 0, r.stderr
        out[(cmd, nu, q)] = path.read_bytes()
    return out


def test_criterion_10_determinism(report, tmp_path):
    a = _suite(tmp_path, 1)
    b = _suite(tmp_path, 1)
    c = _suite(tmp_path, 4)
    diff = [k for k in a if not (a[k] == b[k] == c[k])]
    report(10, not diff, f"{len(a)} certificate files byte-identical across 2 runs and "
                         f"threads 1/4; differing={diff}")
