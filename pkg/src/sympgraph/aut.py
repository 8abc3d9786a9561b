"""Automorphisms of Sp(2nu, q): matrix-induced maps, the basis stabilizer E,
the factorisation Aut = PSp . E, and order formulas.

Permutations are int32 index arrays; ``compose(a, b)`` applies b first.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial, prod

import numpy as np

from .errors import (AdditivityFail, ExtractionMismatch, IdentityViolated,
                     NotAnEdge, NotAutomorphism, NotGSp)
from .gf import FieldCtx, field_aut_group, frobenius_exponent
from .graph import SympGraph, encode
from .search import SearchResult, automorphism_group, compose, inverse
from .symplectic import (complete_hyperbolic, form, gsp_class, identity,
                         mat_inv, mat_mul, mat_scale, sp_inverse, vec_scale)


# -- element types ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FromMatrix:
    T: np.ndarray
    k: int


@dataclass(frozen=True)
class EElement:
    """(k_1, ..., k_nu; x -> x^(p^t)) in (F_q^*)^nu semidirect Aut(F_q)."""

    ks: tuple[int, ...]
    t: int = 0

    def __post_init__(self):
        if any(k == 0 for k in self.ks):
            raise ValueError("E-element scalars must be nonzero")


@dataclass(frozen=True)
class FromE:
    e: EElement


@dataclass(frozen=True)
class Searched:
    pass


@dataclass(frozen=True, eq=False)
class AutElement:
    perm: np.ndarray
    tag: object = None

    @classmethod
    def checked(cls, g: SympGraph, perm, tag=None) -> "AutElement":
        perm = np.asarray(perm, dtype=np.int32)
        if not g.preserves_adjacency(perm):
            raise NotAutomorphism("vertex map does not preserve adjacency")
        perm.setflags(write=False)
        return cls(perm, tag)

    def __mul__(self, other: "AutElement") -> "AutElement":
        return AutElement(compose(self.perm, other.perm))

    def __eq__(self, other):
        return isinstance(other, AutElement) and np.array_equal(self.perm, other.perm)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PiFamily:
    """pis[s] is the field permutation read off slot s; pis[0] is the identity.

    Slot s corresponds to pi_{s+1} in the usual 1-based numbering.
    """

    field: FieldCtx
    pis: tuple[np.ndarray, ...]

    def pi(self, i: int) -> np.ndarray:
        """pi_i with 1-based i."""
        return self.pis[i - 1]

    def key(self) -> bytes:
        return b"".join(p.astype(np.int64).tobytes() for p in self.pis)


# -- matrix-induced automorphisms -------------------------------------------------

def induced_map(g: SympGraph, T) -> np.ndarray:
    """[a] -> [aT] for any nonsingular T, without checking adjacency."""
    return g.matrix_perm(T).astype(np.int32)


def sigma_from_matrix(g: SympGraph, T) -> AutElement:
    cls = gsp_class(g.ctx, T)
    if not cls.in_gsp:
        raise NotGSp("T K T^t is not a multiple of K")
    return AutElement.checked(g, induced_map(g, T), FromMatrix(np.asarray(T), cls.k))


def _scalar_ratio(f: FieldCtx, T1, T2) -> int | None:
    """k with T1 = k T2, or None."""
    T1, T2 = np.asarray(T1), np.asarray(T2)
    nz = np.argwhere(T2 != 0)
    if not len(nz):
        return None
    i, j = nz[0]
    k = f.div(int(T1[i, j]), int(T2[i, j]))
    return k if k and np.array_equal(T1, mat_scale(f, k, T2)) else None


def kernel_check(g: SympGraph, T1, T2) -> bool:
    """sigma_T1 == sigma_T2, asserted equal to T1 being a scalar multiple of T2."""
    same = bool(np.array_equal(induced_map(g, T1), induced_map(g, T2)))
    scalar = _scalar_ratio(g.ctx.field, T1, T2) is not None
    assert same == scalar, "induced maps and scalar multiples disagree"
    return same


def transitivity_witness(g: SympGraph, a: int, b: int) -> AutElement:
    """sigma_T with T in Sp sending vertex a to vertex b."""
    if a == b:
        return AutElement.checked(g, np.arange(g.n), FromMatrix(identity(g.ctx.dim), 1))
    f = g.ctx.field
    Ta = complete_hyperbolic(g.ctx, [g.rep(a)])
    Tb = complete_hyperbolic(g.ctx, [g.rep(b)])
    T = mat_mul(f, mat_inv(f, Ta), Tb)
    el = sigma_from_matrix(g, T)
    assert el.perm[a] == b
    return el


def edge_transitivity_witness(g: SympGraph, edge1, edge2) -> AutElement:
    """sigma_T with T in Sp sending the ordered edge (a1, a2) to (b1, b2)."""
    (a1, a2), (b1, b2) = edge1, edge2
    if not g.adj[a1, a2] or not g.adj[b1, b2]:
        raise NotAnEdge("both arguments must be edges")
    ctx, f = g.ctx, g.ctx.field
    x1, x2, y1, y2 = g.rep(a1), g.rep(a2), g.rep(b1), g.rep(b2)
    c, d = form(ctx, x1, x2), form(ctx, y1, y2)
    # rescale so both pairs are hyperbolic: form(x1, x2') = form(y1, y2') = 1
    x2 = vec_scale(f, f.inv(c), x2)
    y2 = vec_scale(f, f.inv(d), y2)
    Ta = complete_hyperbolic(ctx, [(x1, x2)])
    Tb = complete_hyperbolic(ctx, [(y1, y2)])
    T = mat_mul(f, mat_inv(f, Ta), Tb)
    el = sigma_from_matrix(g, T)
    assert el.perm[a1] == b1 and el.perm[a2] == b2
    return el


# -- the subgroup E ---------------------------------------------------------------

def e_multipliers(f: FieldCtx, e: EElement) -> np.ndarray:
    """Coordinate multipliers (1, k1, k2, k1/k2, ..., k_nu, k1/k_nu)."""
    k1 = e.ks[0]
    out = [1, k1]
    for k in e.ks[1:]:
        out += [k, f.mul(k1, f.inv(k))]
    return np.array(out, dtype=np.int64)


def e_vector_map(g: SympGraph, e: EElement, vectors) -> np.ndarray:
    f = g.ctx.field
    frob = field_aut_group(f)[e.t % f.m]
    return f.vmul(frob[np.asarray(vectors)], e_multipliers(f, e)[None, :])


def e_perm(g: SympGraph, e: EElement) -> np.ndarray:
    key = ("E", e)
    if key not in g.cache:
        perm = g.point_of[encode(e_vector_map(g, e, g.reps), g.q)].astype(np.int32)
        perm.setflags(write=False)
        g.cache[key] = perm
    return g.cache[key]


def basis_vertices(g: SympGraph) -> list[int]:
    """Vertex indices of [e_1], [f_1], ..., [e_nu], [f_nu]."""
    if "basis" not in g.cache:
        g.cache["basis"] = [g.index_of(g.ctx.unit(s)) for s in range(g.ctx.dim)]
    return list(g.cache["basis"])


def e_element_apply(g: SympGraph, e: EElement) -> AutElement:
    if len(e.ks) != g.nu:
        raise ValueError(f"expected {g.nu} scalars")
    el = AutElement.checked(g, e_perm(g, e), FromE(e))
    bv = basis_vertices(g)
    assert all(el.perm[v] == v for v in bv), "E-element moved a basis vertex"
    return el


def e_group_mul(f: FieldCtx, e1: EElement, e2: EElement) -> EElement:
    """(k, pi)(k', pi') = (k pi(k'), pi pi')."""
    ks = tuple(f.mul(k, f.frob_power(kp, e1.t)) for k, kp in zip(e1.ks, e2.ks))
    return EElement(ks, (e1.t + e2.t) % f.m)


def e_group_inv(f: FieldCtx, e: EElement) -> EElement:
    t_inv = (-e.t) % f.m
    return EElement(tuple(f.frob_power(f.inv(k), t_inv) for k in e.ks), t_inv)


def e_elements(f: FieldCtx, nu: int):
    for t in range(f.m):
        for ks in product(range(1, f.q), repeat=nu):
            yield EElement(ks, t)


def e_identity(nu: int) -> EElement:
    return EElement((1,) * nu, 0)


# -- factorisation ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Decomposition:
    """tau = sigma_{T^-1} after tau1, where T is in Sp and tau1 fixes the basis vertices."""

    T: np.ndarray
    tau1: np.ndarray
    e: EElement | None = None
    pi_family: PiFamily | None = None
    residual: dict | None = None  # nu = 1: a -> b with tau1[1, a] = [1, b]

    @property
    def nu_one(self) -> bool:
        return self.residual is not None


def _probe_table(g: SympGraph) -> np.ndarray:
    """probe[s, a] = vertex [e_1 + a * unit_s]."""
    if "probe" not in g.cache:
        q, d = g.q, g.ctx.dim
        probe = np.zeros((d, q), dtype=np.int64)
        for s in range(1, d):
            vecs = np.zeros((q, d), dtype=np.int64)
            vecs[:, 0] = 1
            vecs[:, s] = np.arange(q)
            probe[s] = g.point_of[encode(vecs, q)]
        probe[0] = g.index_of(g.ctx.unit(0))
        g.cache["probe"] = probe
    return g.cache["probe"]


def extract_pi_family(g: SympGraph, tau1) -> PiFamily:
    """Read pi_s off tau1([e_1 + a unit_s]) = [e_1 + pi_s(a) unit_s]."""
    f, d = g.ctx.field, g.ctx.dim
    probe = _probe_table(g)
    pis = [np.arange(f.q, dtype=np.int64)]
    for s in range(1, d):
        imgs = g.reps[np.asarray(tau1)[probe[s]]]
        expected_zero = np.delete(imgs, [0, s], axis=1)
        if (imgs[:, 0] != 1).any() or expected_zero.any():
            raise ExtractionMismatch(f"slot {s}: image leaves the line [e_1] + F unit_{s}")
        pis.append(imgs[:, s].astype(np.int64))
    return PiFamily(f, tuple(pis))


def decompose(g: SympGraph, tau) -> Decomposition:
    """Split tau into sigma_{T^-1} (T in Sp) after an element of E."""
    tau = np.asarray(tau.perm if isinstance(tau, AutElement) else tau, dtype=np.int32)
    if not g.preserves_adjacency(tau):
        raise NotAutomorphism("tau does not preserve adjacency")
    ctx, f, nu = g.ctx, g.ctx.field, g.nu
    bv = basis_vertices(g)

    rows = {}
    for i in range(nu):
        e_img = g.rep(int(tau[bv[2 * i]]))
        f_img = g.rep(int(tau[bv[2 * i + 1]]))
        c = form(ctx, e_img, f_img)
        if c == 0:
            raise NotAutomorphism("images of e_i and f_i are not adjacent")
        rows[2 * i] = e_img
        rows[2 * i + 1] = vec_scale(f, f.inv(c), f_img)
    A_prime = complete_hyperbolic(ctx, rows)  # rows e_i', f_i' with A' K A'^t = K
    T = sp_inverse(ctx, A_prime)  # A' T = identity
    assert gsp_class(ctx, T).kind == "Sp"
    tau1 = compose(induced_map(g, T), tau)
    if any(tau1[v] != v for v in bv):
        raise ExtractionMismatch("sigma_T tau does not fix the basis vertices")

    if nu == 1:
        probe = _probe_table(g)[1]
        residual = {}
        for a in range(1, f.q):
            img = g.reps[tau1[probe[a]]]
            assert img[0] == 1
            residual[a] = int(img[1])
        return Decomposition(T, tau1, residual=residual)

    pf = extract_pi_family(g, tau1)
    k1 = int(pf.pis[1][1])
    pi = np.array([f.mul(f.inv(k1), int(x)) for x in pf.pis[1]], dtype=np.int64)
    t = frobenius_exponent(f, pi)
    if t is None:
        raise ExtractionMismatch("pi_2 / pi_2(1) is not a field automorphism")
    ks = (k1,) + tuple(int(pf.pis[2 * (j - 1)][1]) for j in range(2, nu + 1))
    e = EElement(ks, t)
    if not np.array_equal(e_perm(g, e), tau1):
        raise ExtractionMismatch("E-element built from the pi family differs from tau1")
    return Decomposition(T, tau1, e=e, pi_family=pf)


def recompose(g: SympGraph, d: Decomposition) -> np.ndarray:
    f = g.ctx.field
    if d.nu_one:
        probe = _probe_table(g)[1]
        tau1 = np.arange(g.n, dtype=np.int32)
        for a, b in d.residual.items():
            tau1[probe[a]] = probe[b]
    else:
        tau1 = e_perm(g, d.e)
    return compose(induced_map(g, sp_inverse(g.ctx, d.T)), tau1)


# -- pi-family identities ---------------------------------------------------------

def pi_family_from_e(f: FieldCtx, e: EElement) -> PiFamily:
    """Closed form: pi_2 = k1 pi, pi_{2j-1} = k_j pi, pi_{2j} = k1 k_j^-1 pi."""
    frob = field_aut_group(f)[e.t % f.m]
    mult = e_multipliers(f, e)
    pis = [np.arange(f.q, dtype=np.int64)]
    for s in range(1, len(mult)):
        pis.append(np.asarray(f.vmul(frob, int(mult[s])), dtype=np.int64))
    return PiFamily(f, tuple(pis))


def pi_family_check(pf: PiFamily) -> dict:
    """Exhaustively verify the pi_i identities; raise IdentityViolated on failure."""
    f = pf.field
    d = len(pf.pis)
    nu = d // 2
    P = [None] + list(pf.pis)  # 1-based
    checks = 0
    for i in range(2, d + 1):
        if P[i][0] != 0 or sorted(P[i].tolist()) != list(range(f.q)):
            raise IdentityViolated("pi fixes 0 and permutes F_q", i, 0)
    for i in range(1, nu):
        a_, b_ = P[2 * i + 1], P[2 * i + 2]
        for a in range(f.q):
            lhs = f.mul(int(a_[1]), int(b_[a]))
            mid = f.mul(int(b_[1]), int(a_[a]))
            checks += 1
            if not lhs == mid == int(P[2][a]):
                raise IdentityViolated("pi_{2i+1}(1)pi_{2i+2}(a) = pi_{2i+2}(1)pi_{2i+1}(a) = pi_2(a)",
                                       2 * i + 1, a)
    for i in range(2, d + 1):
        p = P[i]
        one_inv = f.inv(int(p[1]))
        for a in range(f.q):
            if int(p[f.neg(a)]) != f.neg(int(p[a])):
                raise IdentityViolated("pi(-a) = -pi(a)", i, a)
            if a:
                want = f.mul(f.inv(int(p[a])), f.mul(int(p[1]), int(p[1])))
                if int(p[f.inv(a)]) != want:
                    raise IdentityViolated("pi(a^-1) = pi(a)^-1 pi(1)^2", i, a)
            for b in range(f.q):
                checks += 2
                if int(p[f.add(a, b)]) != f.add(int(p[a]), int(p[b])):
                    raise IdentityViolated("pi(a+b) = pi(a) + pi(b)", i, a, b)
                if int(p[f.mul(a, b)]) != f.mul(f.mul(int(p[a]), int(p[b])), one_inv):
                    raise IdentityViolated("pi(ab) = pi(a)pi(b)pi(1)^-1", i, a, b)
    return {"indices": d - 1, "checks": checks, "violations": 0}


# -- q = 2 ------------------------------------------------------------------------

def q2_matrix_recover(g: SympGraph, tau) -> np.ndarray:
    """Over GF(2), tau is additive on vectors and equals sigma_T for T in Sp."""
    if g.q != 2:
        raise ValueError("q2_matrix_recover needs q = 2")
    tau = np.asarray(tau.perm if isinstance(tau, AutElement) else tau)
    codes = encode(g.reps, 2)
    img = codes[tau]
    # vertex i <-> nonzero vector with code codes[i]; sums are XORs of codes
    s = codes[:, None] ^ codes[None, :]
    off = s != 0
    idx = g.point_of[np.where(off, s, codes[0])]
    lhs = img[idx]
    rhs = img[:, None] ^ img[None, :]
    if not np.array_equal(lhs[off], rhs[off]):
        i, j = np.argwhere(off & (lhs != rhs))[0]
        raise AdditivityFail(f"tau(b1 + b2) != tau(b1) + tau(b2) at vertices {i}, {j}")
    T = np.array([g.rep(int(tau[g.index_of(g.ctx.unit(s))])) for s in range(g.ctx.dim)],
                 dtype=np.int64)
    assert gsp_class(g.ctx, T).kind == "Sp"
    assert np.array_equal(induced_map(g, T), tau)
    return T


# -- orders -----------------------------------------------------------------------

def aut_order_formula(nu: int, q: int) -> int:
    from .gf import prime_power

    p, m = prime_power(q)
    if nu == 1:
        value = q * (q * q - 1) * factorial(q - 2)
        assert value == factorial(q + 1)
        return value
    return q ** (nu * nu) * prod(q ** (2 * i) - 1 for i in range(1, nu + 1)) * m


def sp_order(nu: int, q: int) -> int:
    return q ** (nu * nu) * prod(q ** (2 * i) - 1 for i in range(1, nu + 1))


def aut_search(g: SympGraph) -> tuple[int, list[AutElement], SearchResult]:
    res = automorphism_group(g.adj)
    gens = [AutElement.checked(g, p, Searched()) for p in res.generators]
    return res.order, gens, res


def psp_e_intersection(g: SympGraph) -> int:
    """|PSp cap E|: distinct maps induced by diag(k1, 1/k1, ..., k_nu, 1/k_nu)."""
    f = g.ctx.field
    bv = basis_vertices(g)
    seen = set()
    for ks in product(range(1, f.q), repeat=g.nu):
        D = np.zeros((g.ctx.dim, g.ctx.dim), dtype=np.int64)
        for i, k in enumerate(ks):
            D[2 * i, 2 * i] = k
            D[2 * i + 1, 2 * i + 1] = f.inv(k)
        assert gsp_class(g.ctx, D).kind == "Sp"
        perm = induced_map(g, D)
        assert all(perm[v] == v for v in bv)
        seen.add(perm.tobytes())
    return len(seen)
