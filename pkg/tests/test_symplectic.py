import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sympgraph.errors import DimensionMismatch, GramMismatch
from sympgraph.gf import get_field, prime_power
from sympgraph.symplectic import (FormCtx, complete_hyperbolic, form, gsp_class, identity,
                                  in_span, is_totally_isotropic, mat_mul, mat_scale, perp,
                                  random_gsp, random_nonsingular, random_sp, random_vector,
                                  rank, transvection)

CASES = [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]


def ctx(nu, q):
    return FormCtx(nu, get_field(q))


@pytest.mark.parametrize("nu,q", CASES)
def test_standard_alternate(nu, q):
    c = ctx(nu, q)
    f = c.field
    K = c.K
    assert (np.diag(K) == 0).all()
    assert np.array_equal(K.T, np.vectorize(f.neg)(K))
    assert rank(f, K.tolist()) == 2 * nu
    for i in range(1, nu + 1):
        assert form(c, c.e(i), c.f(i)) == 1
        for j in range(1, nu + 1):
            assert form(c, c.e(i), c.e(j)) == 0 and form(c, c.f(i), c.f(j)) == 0
            if i != j:
                assert form(c, c.e(i), c.f(j)) == 0


def test_form_examples(rng):
    c = ctx(1, 3)
    assert form(c, (1, 2), (2, 2)) == 1
    for nu, q in CASES:
        c = ctx(nu, q)
        for _ in range(20):
            a = random_vector(c, rng)
            assert form(c, a, a) == 0
    with pytest.raises(DimensionMismatch):
        form(ctx(2, 3), (1, 0), (0, 1))


@pytest.mark.parametrize("nu,q", [(2, 3), (2, 4), (3, 2)])
def test_form_bilinear(nu, q, rng):
    c = ctx(nu, q)
    f = c.field
    for _ in range(50):
        a, b, d = (random_vector(c, rng, nonzero=False) for _ in range(3))
        k = int(rng.integers(0, q))
        ab = tuple(f.add(f.mul(k, x), y) for x, y in zip(a, b))
        assert form(c, ab, d) == f.add(f.mul(k, form(c, a, d)), form(c, b, d))
        assert form(c, a, b) == f.neg(form(c, b, a))


def test_perp_examples(rng):
    for nu, q in CASES:
        c = ctx(nu, q)
        assert len(perp(c, [])) == 2 * nu
        a = random_vector(c, rng)
        assert len(perp(c, [a])) == 2 * nu - 1
        b = random_vector(c, rng)
        if rank(c.field, [a, b]) == 2:
            assert len(perp(c, [a, b])) == 2 * nu - 2
        for w in perp(c, [a, b]):
            assert form(c, a, w) == 0 and form(c, b, w) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CASES), st.integers(0, 2 ** 32 - 1), st.integers(0, 4))
def test_perp_of_perp_is_span(case, seed, k):
    c = ctx(*case)
    r = np.random.default_rng(seed)
    V = [random_vector(c, r, nonzero=False) for _ in range(min(k, c.dim))]
    PP = perp(c, perp(c, V))
    assert rank(c.field, PP) == rank(c.field, V) if V else len(PP) == 0
    for v in V:
        assert in_span(c.field, PP, v)


def test_isotropy_examples():
    for nu, q in CASES:
        c = ctx(nu, q)
        assert is_totally_isotropic(c, [c.e(i) for i in range(1, nu + 1)])
        assert not is_totally_isotropic(c, [c.e(1), c.f(1)])
        assert is_totally_isotropic(c, [])


def test_gsp_examples():
    for nu, q in CASES:
        c = ctx(nu, q)
        f = c.field
        assert gsp_class(c, identity(c.dim)).kind == "Sp"
        for s in range(1, q):
            cls = gsp_class(c, mat_scale(f, s, identity(c.dim)))
            assert cls.in_gsp and cls.k == f.mul(s, s)
    c = ctx(1, 3)
    cls = gsp_class(c, np.diag([1, 2]))
    assert cls.kind == "GSp" and cls.k == 2 and str(cls) == "GSp(2)"
    with pytest.raises(DimensionMismatch):
        gsp_class(c, identity(4))


@pytest.mark.parametrize("nu,q", [(2, 3), (2, 4), (3, 2), (2, 5)])
def test_gsp_multiplier_is_multiplicative(nu, q, rng):
    c = ctx(nu, q)
    f = c.field
    for _ in range(30):
        A, B = random_gsp(c, rng), random_gsp(c, rng)
        a, b, ab = gsp_class(c, A), gsp_class(c, B), gsp_class(c, mat_mul(f, A, B))
        assert ab.in_gsp and ab.k == f.mul(a.k, b.k)
    # a generic nonsingular matrix is usually not a similitude once nu >= 2
    kinds = {gsp_class(c, random_nonsingular(c, rng)).kind for _ in range(30)}
    assert "NotGSp" in kinds


@pytest.mark.parametrize("nu,q", CASES)
def test_transvections_are_symplectic(nu, q, rng):
    c = ctx(nu, q)
    for _ in range(10):
        T = transvection(c, random_vector(c, rng), int(rng.integers(1, q)))
        assert gsp_class(c, T).kind == "Sp"
        assert gsp_class(c, random_sp(c, rng)).kind == "Sp"


def test_complete_hyperbolic_empty():
    c = ctx(2, 3)
    assert np.array_equal(complete_hyperbolic(c, []), identity(4))


def _small_cases():
    out = []
    for q in range(2, 82):
        if prime_power(q) is None:
            continue
        for nu in range(1, 7):
            if q ** (2 * nu) <= 6561:
                out.append((nu, q))
    return out


def test_complete_hyperbolic_single_vector(rng):
    """Every nonzero vector for 2nu <= 6; 400 random ones in higher dimension."""
    for nu, q in _small_cases():
        c = ctx(nu, q)
        if nu <= 3:
            vecs = itertools.islice(itertools.product(range(q), repeat=2 * nu), 1, None)
        else:
            vecs = (random_vector(c, rng) for _ in range(400))
        for a in vecs:
            T = complete_hyperbolic(c, [a])
            assert tuple(T[0]) == a, (nu, q, a)
            assert gsp_class(c, T).kind == "Sp", (nu, q, a)


@pytest.mark.parametrize("nu,q", [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_complete_hyperbolic_pairs(nu, q, rng):
    c = ctx(nu, q)
    for _ in range(40):
        S = random_sp(c, rng)
        k = int(rng.integers(1, nu + 1))
        partial = [(tuple(S[2 * j]), tuple(S[2 * j + 1])) for j in range(k)]
        T = complete_hyperbolic(c, partial)
        assert gsp_class(c, T).kind == "Sp"
        for j, (u, v) in enumerate(partial):
            assert tuple(T[2 * j]) == u and tuple(T[2 * j + 1]) == v
        if nu > 1:  # scattered slots given as a dict
            T = complete_hyperbolic(c, {0: tuple(S[0]), 2 * nu - 1: tuple(S[2 * nu - 1])})
            assert tuple(T[0]) == tuple(S[0]) and tuple(T[-1]) == tuple(S[-1])
            assert gsp_class(c, T).kind == "Sp"


def test_complete_hyperbolic_gram_mismatch():
    c = ctx(2, 3)
    with pytest.raises(GramMismatch):
        complete_hyperbolic(c, [(c.e(1), c.e(2))])  # form 0, not a hyperbolic pair
    with pytest.raises(GramMismatch):
        complete_hyperbolic(c, [c.e(1), c.f(1)])  # e_1 and e_2 slots must be orthogonal
