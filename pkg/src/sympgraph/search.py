"""Automorphism groups of small graphs by individualization-refinement.

The search walks one root-to-leaf path of the refinement tree (the base),
always splitting the first smallest non-singleton cell at its least vertex.
Going back up the path, for every vertex w of the target cell at level i it
looks for an automorphism fixing the earlier base points and sending the
level-i base point to w.  The group order is the product of the orbit
lengths found at each level.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import SizeExceeded
from .kernels import is_automorphism, refine

MAX_SEARCH_VERTICES = 100


@dataclass
class _Node:
    lab: np.ndarray
    starts: np.ndarray
    inv: np.ndarray

    @property
    def discrete(self) -> bool:
        return len(self.starts) == len(self.lab)

    def cell(self, c: int) -> np.ndarray:
        hi = self.starts[c + 1] if c + 1 < len(self.starts) else len(self.lab)
        return self.lab[self.starts[c]:hi]


def _target_cell(node: _Node) -> int | None:
    n = len(node.lab)
    sizes = np.diff(np.append(node.starts, n))
    best = None
    for c, s in enumerate(sizes):
        if s > 1 and (best is None or s < sizes[best]):
            best = c
    return best


def _individualize(adj, node: _Node, c: int, v: int) -> _Node:
    lo = int(node.starts[c])
    members = node.cell(c)
    lab = node.lab.copy()
    lab[lo] = v
    lab[lo + 1:lo + len(members)] = [x for x in members if x != v]
    starts = np.insert(node.starts, c + 1, lo + 1)
    return _Node(*refine(adj, lab, starts))


@dataclass
class SearchResult:
    order: int
    generators: list[np.ndarray]
    base: list[int]
    orbit_sizes: list[int]
    nodes_visited: int = 0
    leaves_checked: int = 0
    extra: dict = field(default_factory=dict)


def orbit(point: int, gens) -> list[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def initial_partition(n: int, fixed=()) -> tuple[np.ndarray, np.ndarray]:
    """Ordered partition with each vertex of ``fixed`` as its own leading cell."""
    fixed = list(fixed)
    rest = [v for v in range(n) if v not in set(fixed)]
    lab = np.array(fixed + rest, dtype=np.int32)
    starts = list(range(len(fixed))) + ([len(fixed)] if rest else [])
    return lab, np.array(starts, dtype=np.int32)


def automorphism_group(adj, fixed=()) -> SearchResult:
    """Order and generators of Aut(G), or of its pointwise stabilizer of ``fixed``."""
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    n = adj.shape[0]
    if n > MAX_SEARCH_VERTICES:
        raise SizeExceeded(f"automorphism search is limited to {MAX_SEARCH_VERTICES} vertices")
    stats = {"nodes": 0, "leaves": 0}

    root = _Node(*refine(adj, *initial_partition(n, fixed)))
    path = [root]
    base: list[tuple[int, int]] = []
    while not path[-1].discrete:
        c = _target_cell(path[-1])
        v = int(path[-1].cell(c).min())
        base.append((c, v))
        path.append(_individualize(adj, path[-1], c, v))
    leaf = path[-1].lab

    def dfs(node: _Node, depth: int):
        stats["nodes"] += 1
        if node.discrete:
            stats["leaves"] += 1
            perm = np.empty(n, dtype=np.int32)
            perm[leaf] = node.lab
            return perm if is_automorphism(adj, perm) else None
        c = base[depth][0]
        for x in sorted(node.cell(c).tolist()):
            child = _individualize(adj, node, c, x)
            if np.array_equal(child.inv, path[depth + 1].inv):
                found = dfs(child, depth + 1)
                if found is not None:
                    return found
        return None

    gens: list[np.ndarray] = []
    orbit_sizes = [0] * len(base)
    for level in range(len(base) - 1, -1, -1):
        c, v = base[level]
        orb = set(orbit(v, gens))
        for w in sorted(path[level].cell(c).tolist()):
            if w in orb:
                continue
            child = _individualize(adj, path[level], c, w)
            if not np.array_equal(child.inv, path[level + 1].inv):
                continue
            perm = dfs(child, level + 1)
            if perm is not None:
                gens.append(perm)
                orb = set(orbit(v, gens))
        orbit_sizes[level] = len(orb)

    return SearchResult(
        order=prod(orbit_sizes),
        generators=gens,
        base=[v for _, v in base],
        orbit_sizes=orbit_sizes,
        nodes_visited=stats["nodes"],
        leaves_checked=stats["leaves"],
    )


# -- permutation-group helpers ---------------------------------------------------

def compose(a, b) -> np.ndarray:
    """a after b: v -> a[b[v]]."""
    return np.asarray(a)[np.asarray(b)]


def inverse(a) -> np.ndarray:
    a = np.asarray(a)
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def enumerate_group(gens, n: int, limit: int | None = None) -> list[np.ndarray]:
    """All elements of <gens> in breadth-first order from the identity."""
    ident = np.arange(n, dtype=np.int32)
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    seen = {ident.tobytes()}
    out = [ident]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for g in gens:
            y = g[x]
            key = y.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(y)
                if limit is not None and len(out) > limit:
                    raise SizeExceeded(f"group has more than {limit} elements")
    return out


def random_element(gens, n: int, rng, length: int = 30) -> np.ndarray:
    """Product of ``length`` generators chosen uniformly (a random word)."""
    x = np.arange(n, dtype=np.int32)
    for j in rng.integers(0, len(gens), size=length):
        x = np.asarray(gens[j])[x]
    return x
