"""Symplectic spreads, the induced colouring, and the chromatic number.

The spread is built in the model space GF(q^nu)^2 with the alternate form
<(a,b),(c,d)> = Tr(ad) - Tr(bc), whose members are {(0,y)} and {(x, lx)} for
every l in GF(q^nu).  A hyperbolic basis of that form carries everything onto
the standard K.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import CountMismatch, ImproperColoring, TowerMismatch
from .gf import TowerCtx, rel_trace, tower_build
from .graph import SympGraph, encode
from .kernels import max_independent_set
from .symplectic import (FormCtx, Vec, hyperbolic_basis, is_totally_isotropic,
                         mat_inv, mat_mul, rank, rref, standard_alternate)

EXACT_ALPHA_LIMIT = 40


@dataclass(frozen=True, eq=False)
class Spread:
    members: tuple[tuple[Vec, ...], ...]
    transform: np.ndarray  # M with M G M^t = K, G the trace-form Gram matrix
    gram: np.ndarray  # G

    def __len__(self):
        return len(self.members)


def trace_form_gram(tower: TowerCtx) -> np.ndarray:
    """Gram matrix of the trace form on the basis (b_i, 0), (0, b_i)."""
    big, base, nu = tower.big, tower.base, tower.nu
    G = np.zeros((2 * nu, 2 * nu), dtype=np.int64)
    for i in range(nu):
        for j in range(nu):
            t = rel_trace(tower, big.mul(tower.basis[i], tower.basis[j]))
            G[i, nu + j] = t
            G[nu + j, i] = base.neg(t)
    return G


def build_spread(ctx: FormCtx, tower: TowerCtx | None = None) -> Spread:
    f = ctx.field
    if tower is None:
        tower = tower_build(f, ctx.nu)
    if tower.base.q != f.q or tower.base.p != f.p or tower.nu != ctx.nu:
        raise TowerMismatch(f"tower GF({tower.base.q})^{tower.nu} does not match "
                            f"GF({f.q}) with nu={ctx.nu}")
    nu, big = ctx.nu, tower.big
    G = trace_form_gram(tower)
    assert np.array_equal(G.T, np.vectorize(f.neg)(G)) and not np.diag(G).any()
    assert rank(f, G.tolist()) == 2 * nu, "trace form is degenerate"

    M = hyperbolic_basis(f, G)
    to_standard = mat_inv(f, M)

    def model_rows(pairs):
        return [tuple(int(c) for c in tower.coords[a]) + tuple(int(c) for c in tower.coords[b])
                for a, b in pairs]

    model_members = [
        model_rows([(b, big.mul(lam, b)) for b in tower.basis]) for lam in range(big.q)
    ]
    model_members.append(model_rows([(0, b) for b in tower.basis]))
    members = tuple(
        tuple(rref(f, mat_mul(f, np.array(rows), to_standard).tolist())[0])
        for rows in model_members
    )
    M.setflags(write=False)
    G.setflags(write=False)
    return Spread(members, M, G)


def span_points(g: SympGraph, basis) -> list[int]:
    """Vertex indices of all 1-spaces inside span(basis), sorted."""
    f = g.ctx.field
    basis = np.array(basis, dtype=np.int64)
    vecs = []
    for coeffs in product(range(f.q), repeat=len(basis)):
        acc = np.zeros(g.ctx.dim, dtype=np.int64)
        for c, b in zip(coeffs, basis):
            if c:
                acc = f.vadd(acc, f.vmul(c, b))
        if acc.any():
            vecs.append(acc)
    if not vecs:
        return []
    return sorted(set(g.point_of[encode(np.array(vecs), g.q)].tolist()))


def verify_spread(g: SympGraph, s: Spread) -> None:
    """Assert every spread invariant against the standard form."""
    ctx, q, nu = g.ctx, g.q, g.nu
    assert len(s.members) == q ** nu + 1
    assert np.array_equal(mat_mul(ctx.field, mat_mul(ctx.field, s.transform, s.gram),
                                  s.transform.T), standard_alternate(ctx.field, nu))
    seen = np.zeros(g.n, dtype=np.int64)
    for basis in s.members:
        assert len(basis) == nu and rank(ctx.field, basis) == nu
        assert is_totally_isotropic(ctx, basis)
        seen[span_points(g, basis)] += 1
    # (q^nu + 1) members of (q^nu - 1)/(q - 1) points each cover the n points
    assert (seen == 1).all(), "spread members overlap or miss a point"


@dataclass(frozen=True, eq=False)
class Coloring:
    color: np.ndarray
    classes: tuple[tuple[int, ...], ...]

    @property
    def num_colors(self) -> int:
        return len(self.classes)


def coloring_from_spread(g: SympGraph, s: Spread) -> Coloring:
    color = np.full(g.n, -1, dtype=np.int64)
    classes = []
    for i, basis in enumerate(s.members):
        pts = span_points(g, basis)
        assert (color[pts] == -1).all(), "spread members share a point"
        color[pts] = i
        classes.append(tuple(pts))
    assert (color >= 0).all(), "spread does not cover every point"
    for cls in classes:
        sub = g.adj[np.ix_(cls, cls)]
        if sub.any():
            a, b = np.argwhere(sub)[0]
            raise ImproperColoring(cls[a], cls[b])
    color.setflags(write=False)
    return Coloring(color, tuple(classes))


def cross_class_degree(g: SympGraph, c: Coloring) -> np.ndarray:
    """Neighbour counts of every vertex in every class; all off-class counts are q^(nu-1)."""
    onehot = np.zeros((g.n, c.num_colors), dtype=np.int64)
    onehot[np.arange(g.n), c.color] = 1
    table = g.adj.astype(np.int64) @ onehot
    expected = g.q ** (g.nu - 1)
    for v in range(g.n):
        for j in range(c.num_colors):
            want = 0 if j == c.color[v] else expected
            if table[v, j] != want:
                raise CountMismatch(v, j, int(table[v, j]), want)
    return table


@dataclass(frozen=True)
class ChromaticCertificate:
    chi: int
    alpha: int
    alpha_method: str  # "branch-and-bound" or "isotropy-bound"
    max_independent_set: tuple[int, ...] | None
    classes: tuple[tuple[int, ...], ...]
    cross_degree: int
    independent_sets_checked: int

    def to_dict(self) -> dict:
        return {
            "chi": self.chi,
            "alpha": self.alpha,
            "alpha_method": self.alpha_method,
            "max_independent_set": list(self.max_independent_set or []),
            "classes": [list(c) for c in self.classes],
            "cross_degree": self.cross_degree,
            "independent_sets_checked": self.independent_sets_checked,
            "failures": 0,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def independent_span_isotropic(g: SympGraph, vertices) -> bool:
    return is_totally_isotropic(g.ctx, [g.rep(v) for v in vertices])


def chromatic_certificate(g: SympGraph, c: Coloring) -> ChromaticCertificate:
    """chi = q^nu + 1: the colouring gives the upper bound, alpha the lower one."""
    q, nu = g.q, g.nu
    class_size = (q ** nu - 1) // (q - 1)
    upper = c.num_colors
    assert upper == q ** nu + 1

    checked = 0
    for cls in c.classes:
        assert len(cls) == class_size
        assert independent_span_isotropic(g, cls)
        basis = rref(g.ctx.field, [g.rep(v) for v in cls])[0]
        assert len(basis) <= nu
        checked += 1

    table = cross_class_degree(g, c)
    del table

    mis = None
    if g.n <= EXACT_ALPHA_LIMIT:
        best, leaves = max_independent_set(g.adj, record_leaves=True)
        for leaf in leaves + [best]:
            assert independent_span_isotropic(g, leaf), "independent set with non-isotropic span"
            checked += 1
        alpha, method, mis = len(best), "branch-and-bound", tuple(best)
        assert alpha == class_size, f"alpha = {alpha}, expected {class_size}"
    else:
        # an independent set spans a totally isotropic subspace, of dimension <= nu
        alpha, method = class_size, "isotropy-bound"
    lower = -(-g.n // alpha)
    assert lower == upper, f"lower bound {lower} != upper bound {upper}"
    return ChromaticCertificate(upper, alpha, method, mis, c.classes,
                                q ** (nu - 1), checked)
