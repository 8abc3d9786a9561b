"""Row-vector linear algebra over GF(q) with the standard alternate form.

Vectors are tuples of field indices; matrices are 2-D int64 numpy arrays.
Matrices act on the right: a vector a is sent to a @ T.  Slot 2i holds
e_{i+1} and slot 2i+1 holds f_{i+1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, GramMismatch
from .gf import FieldCtx

Vec = tuple[int, ...]


def standard_alternate(f: FieldCtx, nu: int) -> np.ndarray:
    K = np.zeros((2 * nu, 2 * nu), dtype=np.int64)
    minus_one = f.neg(1)
    for i in range(nu):
        K[2 * i, 2 * i + 1] = 1
        K[2 * i + 1, 2 * i] = minus_one
    K.setflags(write=False)
    return K


@dataclass(frozen=True, eq=False)
class FormCtx:
    nu: int
    field: FieldCtx
    K: np.ndarray = dc_field(init=False)

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError("nu must be at least 1")
        object.__setattr__(self, "K", standard_alternate(self.field, self.nu))

    @property
    def dim(self) -> int:
        return 2 * self.nu

    @property
    def q(self) -> int:
        return self.field.q

    def unit(self, slot: int) -> Vec:
        v = [0] * self.dim
        v[slot] = 1
        return tuple(v)

    def e(self, i: int) -> Vec:
        """e_i, 1-based as in the usual hyperbolic numbering."""
        return self.unit(2 * (i - 1))

    def f(self, i: int) -> Vec:
        return self.unit(2 * (i - 1) + 1)


# -- small dense helpers --------------------------------------------------------

def _dot(f: FieldCtx, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = f.add(acc, f.mul(int(x), int(y)))
    return acc


def vec_add(f: FieldCtx, a, b) -> Vec:
    return tuple(f.add(int(x), int(y)) for x, y in zip(a, b))


def vec_sub(f: FieldCtx, a, b) -> Vec:
    return tuple(f.sub(int(x), int(y)) for x, y in zip(a, b))


def vec_scale(f: FieldCtx, c: int, a) -> Vec:
    return tuple(f.mul(c, int(x)) for x in a)


def mat_mul(f: FieldCtx, A, B) -> np.ndarray:
    A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"{A.shape} x {B.shape}")
    if f.m == 1:
        return (A @ B) % f.p
    if f.mul_table is None:
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for i in range(A.shape[0]):
            for j in range(B.shape[1]):
                out[i, j] = _dot(f, A[i], B[:, j])
        return out
    P = f.mul_table[A[:, :, None], B[None, :, :]]
    acc = P[:, 0, :] if A.shape[1] else np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(1, A.shape[1]):
        acc = f.add_table[acc, P[:, k, :]]
    return acc.astype(np.int64)


def vec_mat(f: FieldCtx, a, T) -> Vec:
    return tuple(int(x) for x in mat_mul(f, np.asarray(a).reshape(1, -1), T)[0])


def mat_scale(f: FieldCtx, c: int, A) -> np.ndarray:
    return np.vectorize(lambda x: f.mul(c, int(x)), otypes=[np.int64])(np.asarray(A))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(f: FieldCtx, rows: Iterable[Sequence[int]]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form, leftmost pivot, least-row tie-breaking.

    Returns the nonzero reduced rows and their pivot columns.
    """
    M = [list(map(int, r)) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = f.inv(M[r][c])
        M[r] = [f.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                coef = M[i][c]
                M[i] = [f.sub(x, f.mul(coef, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(f: FieldCtx, rows) -> int:
    return len(rref(f, rows)[0])


def nullspace(f: FieldCtx, rows, ncols: int) -> list[Vec]:
    """Basis of {x : r . x = 0 for every row r}, in reduced form."""
    R, pivots = rref(f, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(R, pivots):
            x[pc] = f.neg(row[fc])
        basis.append(tuple(x))
    return rref(f, basis)[0]


def in_span(f: FieldCtx, rows, v) -> bool:
    rows = list(rows)
    return rank(f, rows + [v]) == rank(f, rows)


def mat_inv(f: FieldCtx, A) -> np.ndarray:
    A = np.asarray(A)
    n = A.shape[0]
    aug = [list(map(int, A[i])) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(f, aug)
    if len(R) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return np.array([row[n:] for row in R], dtype=np.int64)


def sp_inverse(ctx: "FormCtx", T) -> np.ndarray:
    """T^-1 = K T^t K^-1 for T in Sp; the standard K has K^-1 = K^t."""
    f = ctx.field
    return mat_mul(f, mat_mul(f, ctx.K, np.asarray(T).T), ctx.K.T)


def is_nonsingular(f: FieldCtx, A) -> bool:
    A = np.asarray(A)
    return rank(f, A.tolist()) == A.shape[0]


# -- the form -----------------------------------------------------------------

def form_gram(f: FieldCtx, G, a, b) -> int:
    """a G b^t."""
    return _dot(f, vec_mat(f, a, G), b)


def form(ctx: FormCtx, a, b) -> int:
    """a K b^t for the standard alternate K, i.e. sum a_{2i}b_{2i+1} - a_{2i+1}b_{2i}."""
    if len(a) != ctx.dim or len(b) != ctx.dim:
        raise DimensionMismatch(f"expected vectors of length {ctx.dim}")
    f = ctx.field
    acc = 0
    for i in range(0, ctx.dim, 2):
        acc = f.add(acc, f.sub(f.mul(int(a[i]), int(b[i + 1])),
                               f.mul(int(a[i + 1]), int(b[i]))))
    return acc


def perp(ctx: FormCtx, V: Sequence[Sequence[int]]) -> list[Vec]:
    """Reduced basis of V^perp = {b : v K b^t = 0 for all v in V}."""
    f = ctx.field
    constraints = [vec_mat(f, v, ctx.K) for v in V]
    if not constraints:
        return [ctx.unit(i) for i in range(ctx.dim)]
    return nullspace(f, constraints, ctx.dim)


def perp_gram(f: FieldCtx, G, V) -> list[Vec]:
    n = np.asarray(G).shape[0]
    constraints = [vec_mat(f, v, G) for v in V]
    if not constraints:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return nullspace(f, constraints, n)


def is_totally_isotropic(ctx: FormCtx, V) -> bool:
    V = list(V)
    ok = all(form(ctx, u, v) == 0 for u in V for v in V)
    if ok:
        assert rank(ctx.field, V) <= ctx.nu if V else True, \
            "totally isotropic subspace of dimension > nu"
    return ok


@dataclass(frozen=True)
class GSpClass:
    kind: str  # "Sp", "GSp" or "NotGSp"
    k: int | None = None

    @property
    def in_gsp(self) -> bool:
        return self.kind != "NotGSp"

    def __str__(self):
        return self.kind if self.kind != "GSp" else f"GSp({self.k})"


def gram_of(f: FieldCtx, T, G) -> np.ndarray:
    """T G T^t."""
    T = np.asarray(T)
    return mat_mul(f, mat_mul(f, T, G), T.T)


def gsp_class(ctx: FormCtx, T) -> GSpClass:
    T = np.asarray(T)
    if T.shape != (ctx.dim, ctx.dim):
        raise DimensionMismatch(f"expected a {ctx.dim}x{ctx.dim} matrix")
    f = ctx.field
    TKT = gram_of(f, T, ctx.K)
    if np.array_equal(TKT, ctx.K):
        return GSpClass("Sp", 1)
    k = int(TKT[0, 1])
    if k and np.array_equal(TKT, mat_scale(f, k, ctx.K)):
        return GSpClass("GSp", k)
    return GSpClass("NotGSp")


# -- hyperbolic completion ----------------------------------------------------

def hyperbolic_basis(f: FieldCtx, G, assigned: dict[int, Sequence[int]] | None = None) -> np.ndarray:
    """Rows b_0..b_{2nu-1} with b_s G b_t^t equal to the standard K[s, t].

    ``assigned`` fixes some rows in advance (slot -> vector).  Unfilled
    partners of assigned slots are completed first, then remaining pairs in
    slot order.  Every choice takes the first vector of a reduced basis of
    the relevant perp that pairs nonzero with the partner, so the output is
    deterministic.
    """
    G = np.asarray(G)
    dim = G.shape[0]
    nu = dim // 2
    K = standard_alternate(f, nu)
    rows: dict[int, Vec] = {int(s): tuple(map(int, v)) for s, v in (assigned or {}).items()}

    for s, v in rows.items():
        if not 0 <= s < dim or len(v) != dim:
            raise GramMismatch(f"bad slot or vector length for slot {s}")
    slots = sorted(rows)
    for s in slots:
        for t in slots:
            if form_gram(f, G, rows[s], rows[t]) != K[s, t]:
                raise GramMismatch(f"slots {s},{t}: pairing differs from the standard basis")
    if rank(f, [rows[s] for s in slots]) != len(slots):
        raise GramMismatch("assigned vectors are linearly dependent")

    def partner_for(s: int) -> Vec:
        # the slot paired with s must meet every other chosen vector in 0
        u = rows[s]
        others = [rows[t] for t in sorted(rows) if t != s]
        for b in perp_gram(f, G, others):
            c = form_gram(f, G, u, b) if s % 2 == 0 else form_gram(f, G, b, u)
            if c:
                return vec_scale(f, f.inv(c), b)
        raise GramMismatch(f"no partner exists for slot {s}")

    for s in sorted(rows):
        mate = s ^ 1
        if mate not in rows:
            rows[mate] = partner_for(s)

    for i in range(nu):
        if 2 * i in rows:
            continue
        W = perp_gram(f, G, [rows[t] for t in sorted(rows)])
        rows[2 * i] = W[0]
        rows[2 * i + 1] = partner_for(2 * i)

    B = np.array([rows[s] for s in range(dim)], dtype=np.int64)
    assert np.array_equal(gram_of(f, B, G), K), "hyperbolic completion failed"
    return B


def complete_hyperbolic(ctx: FormCtx, partial=()) -> np.ndarray:
    """T in Sp whose rows start with the given vectors.

    ``partial`` is either a mapping slot -> vector, or a sequence whose j-th
    item is a single vector (taken as e_{j+1} T) or a pair (u, v) (taken as
    e_{j+1} T and f_{j+1} T).
    """
    if isinstance(partial, dict):
        assigned = dict(partial)
    else:
        assigned = {}
        for j, item in enumerate(partial):
            if len(item) == 2 and not isinstance(item[0], (int, np.integer)):
                assigned[2 * j], assigned[2 * j + 1] = item
            else:
                assigned[2 * j] = item
    if len(assigned) > ctx.dim:
        raise GramMismatch("more vectors than the space has basis slots")
    if not assigned:
        return identity(ctx.dim)
    return hyperbolic_basis(ctx.field, ctx.K, assigned)


# -- generators and random elements -----------------------------------------------

def transvection(ctx: FormCtx, u, c: int) -> np.ndarray:
    """Matrix of x -> x + c (x K u^t) u."""
    f = ctx.field
    Ku = vec_mat(f, u, ctx.K.T)  # column K u^t as a tuple
    T = identity(ctx.dim)
    for i in range(ctx.dim):
        for j in range(ctx.dim):
            T[i, j] = f.add(int(T[i, j]), f.mul(c, f.mul(Ku[i], int(u[j]))))
    return T


def random_vector(ctx: FormCtx, rng, nonzero: bool = True) -> Vec:
    while True:
        v = tuple(int(x) for x in rng.integers(0, ctx.q, size=ctx.dim))
        if not nonzero or any(v):
            return v


def random_sp(ctx: FormCtx, rng) -> np.ndarray:
    """Uniform random element of Sp: a random hyperbolic basis as rows."""
    f = ctx.field
    rows: list[Vec] = []
    for _ in range(ctx.nu):
        W = perp(ctx, rows)
        while True:
            coeff = [int(x) for x in rng.integers(0, ctx.q, size=len(W))]
            e = _combine(f, coeff, W, ctx.dim)
            if any(e):
                break
        while True:
            coeff = [int(x) for x in rng.integers(0, ctx.q, size=len(W))]
            v = _combine(f, coeff, W, ctx.dim)
            c = form(ctx, e, v)
            if c:
                rows += [e, vec_scale(f, f.inv(c), v)]
                break
    return np.array(rows, dtype=np.int64)


def _combine(f: FieldCtx, coeff, basis, dim) -> Vec:
    acc = (0,) * dim
    for c, b in zip(coeff, basis):
        if c:
            acc = vec_add(f, acc, vec_scale(f, c, b))
    return acc


def similitude(ctx: FormCtx, k: int) -> np.ndarray:
    """diag(1, k, 1, k, ...), which lies in GSp with multiplier k."""
    D = identity(ctx.dim)
    for i in range(ctx.nu):
        D[2 * i + 1, 2 * i + 1] = k
    return D


def random_gsp(ctx: FormCtx, rng) -> np.ndarray:
    k = int(rng.integers(1, ctx.q))
    return mat_mul(ctx.field, similitude(ctx, k), random_sp(ctx, rng))


def random_nonsingular(ctx: FormCtx, rng) -> np.ndarray:
    while True:
        T = rng.integers(0, ctx.q, size=(ctx.dim, ctx.dim)).astype(np.int64)
        if is_nonsingular(ctx.field, T):
            return T
