"""The symplectic graph Sp(2nu, q): vertices, adjacency and its SRG certificate."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict, field

import numpy as np

from .errors import FormatUnsupported, NotSRG, SizeExceeded
from .gf import get_field
from .symplectic import FormCtx, Vec

MAX_VECTORS = 1 << 24


@dataclass(frozen=True)
class ProjPoint:
    rep: Vec
    index: int


def srg_parameters(nu: int, q: int) -> tuple[int, int, int, int]:
    n = (q ** (2 * nu) - 1) // (q - 1)
    k = q ** (2 * nu - 1)
    lam = q ** (2 * nu - 2) * (q - 1)
    return n, k, lam, lam


def _check_size(ctx: FormCtx) -> None:
    if ctx.q ** ctx.dim > MAX_VECTORS:
        raise SizeExceeded(f"q^(2nu) = {ctx.q ** ctx.dim} exceeds {MAX_VECTORS}")


def vertex_reps(ctx: FormCtx) -> np.ndarray:
    """Canonical representatives (first nonzero coordinate 1), lexicographically sorted."""
    _check_size(ctx)
    q, d = ctx.q, ctx.dim
    blocks = []
    for lead in range(d - 1, -1, -1):
        tail_len = d - 1 - lead
        if tail_len:
            tails = np.indices((q,) * tail_len).reshape(tail_len, -1).T
        else:
            tails = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(tails), d), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        blocks.append(block)
    reps = np.concatenate(blocks)
    reps.setflags(write=False)
    return reps


def enumerate_vertices(ctx: FormCtx) -> list[ProjPoint]:
    return [ProjPoint(tuple(int(x) for x in r), i) for i, r in enumerate(vertex_reps(ctx))]


def encode(vectors, q: int) -> np.ndarray:
    """Base-q integer code of each row, first coordinate most significant."""
    vectors = np.asarray(vectors)
    d = vectors.shape[-1]
    return vectors @ (q ** np.arange(d - 1, -1, -1, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class SympGraph:
    ctx: FormCtx
    n: int
    reps: np.ndarray
    adj: np.ndarray  # (n, n) uint8
    point_of: np.ndarray  # code of any nonzero vector -> vertex index; -1 for zero
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def nu(self) -> int:
        return self.ctx.nu

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def expected_params(self) -> tuple[int, int, int, int]:
        return srg_parameters(self.nu, self.q)

    def index_of(self, vec) -> int:
        idx = int(self.point_of[int(encode(np.asarray(vec, dtype=np.int64), self.q))])
        if idx < 0:
            raise ValueError("the zero vector is not a vertex")
        return idx

    def rep(self, v: int) -> Vec:
        return tuple(int(x) for x in self.reps[v])

    def neighbours(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def edges(self):
        iu, ju = np.nonzero(np.triu(self.adj, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def image_vectors(self, T) -> np.ndarray:
        """reps @ T over GF(q), vectorised."""
        f = self.ctx.field
        T = np.asarray(T, dtype=np.int64)
        out = np.zeros_like(self.reps)
        for j in range(self.ctx.dim):
            acc = np.zeros(self.n, dtype=np.int64)
            for k in range(self.ctx.dim):
                if T[k, j]:
                    acc = f.vadd(acc, f.vmul(self.reps[:, k], int(T[k, j])))
            out[:, j] = acc
        return out

    def matrix_perm(self, T) -> np.ndarray:
        """The vertex map [a] -> [aT] as an index array (T must be nonsingular)."""
        perm = self.point_of[encode(self.image_vectors(T), self.q)]
        if (perm < 0).any():
            raise ValueError("matrix is singular")
        return perm

    def preserves_adjacency(self, perm) -> bool:
        from .kernels import is_automorphism

        return is_automorphism(self.adj, np.asarray(perm, dtype=np.int32))


def _form_rows(ctx: FormCtx, reps: np.ndarray, rows: slice) -> np.ndarray:
    f = ctx.field
    A = reps[rows]
    acc = np.zeros((A.shape[0], reps.shape[0]), dtype=np.int64)
    for i in range(0, ctx.dim, 2):
        t1 = f.vmul(A[:, i, None], reps[None, :, i + 1])
        t2 = f.vmul(A[:, i + 1, None], reps[None, :, i])
        acc = f.vadd(acc, f.vadd(t1, f.neg_table[t2]))
    return acc


def _row_blocks(n: int, threads: int) -> list[slice]:
    threads = max(1, min(threads, n))
    step = math.ceil(n / threads)
    return [slice(s, min(n, s + step)) for s in range(0, n, step)]


def build_graph(ctx: FormCtx, threads: int = 1) -> SympGraph:
    """Sp(2nu, q): [a] ~ [b] iff a K b^t != 0."""
    if ctx.q > 256:
        raise SizeExceeded("graph construction needs dense field tables (q <= 256)")
    reps = vertex_reps(ctx)
    n = len(reps)
    f = ctx.field

    point_of = np.full(ctx.q ** ctx.dim, -1, dtype=np.int32)
    for c in range(1, ctx.q):
        point_of[encode(f.vmul(c, reps), ctx.q)] = np.arange(n, dtype=np.int32)
    point_of.setflags(write=False)

    blocks = _row_blocks(n, threads)
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        parts = list(pool.map(lambda s: _form_rows(ctx, reps, s) != 0, blocks))
    adj = np.ascontiguousarray(np.concatenate(parts).astype(np.uint8))
    adj.setflags(write=False)
    return SympGraph(ctx, n, reps, adj, point_of)


def symplectic_graph(nu: int, q: int, threads: int = 1) -> SympGraph:
    return build_graph(FormCtx(nu, get_field(q)), threads=threads)


@dataclass(frozen=True)
class SrgCertificate:
    n: int
    k: int
    lam: int
    mu: int
    eigenvalues: tuple[int, int, int]
    multiplicities: tuple[int, int, int]
    identity_verified: bool
    spectrum_verified: bool

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "params": list(self.params),
            "eigs": list(self.eigenvalues),
            "multiplicities": list(self.multiplicities),
            "identity_verified": d["identity_verified"],
            "spectrum_verified": d["spectrum_verified"],
            "failures": int(not (self.identity_verified and self.spectrum_verified)),
        }


def _square(A: np.ndarray, threads: int) -> np.ndarray:
    blocks = _row_blocks(A.shape[0], threads)
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        return np.concatenate(list(pool.map(lambda s: A[s] @ A, blocks)))


def certify_srg(g: SympGraph, threads: int = 1) -> SrgCertificate:
    """Check A^2 = kI + lam A + mu (J - I - A) exactly and derive the spectrum.

    Raises NotSRG with the first offending vertex pair.
    """
    n, k, lam, mu = g.expected_params
    assert g.n == n
    A = g.adj.astype(np.int64)
    I = np.eye(n, dtype=np.int64)
    J = np.ones((n, n), dtype=np.int64)
    A2 = _square(A, threads)
    expected = k * I + lam * A + mu * (J - I - A)
    bad = np.argwhere(A2 != expected)
    if len(bad):
        u, v = map(int, bad[0])
        raise NotSRG(u, v, int(expected[u, v]), int(A2[u, v]))

    # restricted eigenvalues: roots of x^2 - (lam - mu) x - (k - mu)
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    assert root * root == disc, "non-integral eigenvalues"
    r = (lam - mu + root) // 2
    s = (lam - mu - root) // 2
    # (A - rI)(A - sI) = mu J pins the spectrum to {k, r, s}
    spectral = np.array_equal(A2 - (r + s) * A + r * s * I, mu * J) and \
        np.array_equal(A.sum(axis=1), np.full(n, k))
    # multiplicity of r from the standard SRG identity
    num = 2 * k + (n - 1) * (lam - mu)
    assert num % (r - s) == 0
    f_mult = ((n - 1) - num // (r - s)) // 2
    g_mult = n - 1 - f_mult
    spectral = spectral and (k + f_mult * r + g_mult * s == 0) and f_mult >= 0
    return SrgCertificate(n, k, lam, mu, (k, r, s), (1, f_mult, g_mult), True, bool(spectral))


# -- export -------------------------------------------------------------------

def _graph6_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(adj) -> bytes:
    adj = np.asarray(adj)
    n = adj.shape[0]
    bits = [int(adj[i, j] != 0) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return _graph6_n(n) + body


def from_graph6(data: bytes) -> np.ndarray:
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    vals = [b - 63 for b in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    else:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    bits = []
    for v in vals[pos:]:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    adj = np.zeros((n, n), dtype=np.uint8)
    it = iter(bits)
    for j in range(1, n):
        for i in range(j):
            if next(it):
                adj[i, j] = adj[j, i] = 1
    return adj


def to_dimacs(g: SympGraph) -> bytes:
    edges = g.edges()
    lines = [f"c symplectic graph Sp({g.ctx.dim},{g.q})", f"p edge {g.n} {len(edges)}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in edges]
    return ("\n".join(lines) + "\n").encode()


def to_json_edges(g: SympGraph) -> bytes:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]},
                      separators=(",", ":")).encode()


EXPORTERS = {
    "graph6": lambda g: to_graph6(g.adj),
    "dimacs": to_dimacs,
    "json": to_json_edges,
    "edgelist-json": to_json_edges,
}


def export(g: SympGraph, fmt: str) -> bytes:
    try:
        return EXPORTERS[fmt](g)
    except KeyError:
        raise FormatUnsupported(f"unknown export format {fmt!r}") from None
