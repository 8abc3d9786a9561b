"""Reference implementations of the hot kernels (numpy + plain Python).

The compiled module ``_ckernels`` exposes the same functions and must agree
with these bit for bit.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def refine(adj, lab, starts):
    """Equitable refinement of an ordered partition.

    ``lab`` lists the vertices cell by cell, ``starts`` gives the first
    position of every cell.  Each round splits every cell by the vector of
    neighbour counts into the current cells, ordering the pieces by that
    vector (then by vertex id inside a piece).  Returns (lab, starts,
    invariant) where the invariant is the cell sizes followed by the quotient
    matrix of the final, equitable partition.
    """
    adj = np.asarray(adj)
    n = adj.shape[0]
    lab = np.array(lab, dtype=np.int32)
    starts = [int(s) for s in starts]
    while True:
        nc = len(starts)
        bounds = starts + [n]
        cell_of = np.empty(n, dtype=np.int64)
        for c in range(nc):
            cell_of[lab[bounds[c]:bounds[c + 1]]] = c
        ind = np.zeros((n, nc), dtype=np.int32)
        ind[np.arange(n), cell_of] = 1
        cnt = adj.astype(np.int32) @ ind

        new_lab = np.empty(n, dtype=np.int32)
        new_starts = []
        changed = False
        for c in range(nc):
            lo, hi = bounds[c], bounds[c + 1]
            vs = lab[lo:hi]
            if hi - lo == 1:
                new_lab[lo] = vs[0]
                new_starts.append(lo)
                continue
            rows = cnt[vs]
            keys = (vs,) + tuple(rows[:, j] for j in range(nc - 1, -1, -1))
            order = np.lexsort(keys)
            vs, rows = vs[order], rows[order]
            new_lab[lo:hi] = vs
            new_starts.append(lo)
            for i in range(1, hi - lo):
                if not np.array_equal(rows[i], rows[i - 1]):
                    new_starts.append(lo + i)
                    changed = True
        lab, starts = new_lab, new_starts
        if not changed:
            sizes = np.diff(np.array(starts + [n]))
            quotient = cnt[lab[np.array(starts)]]
            inv = np.concatenate([sizes, quotient.ravel()]).astype(np.int64)
            return lab, np.array(starts, dtype=np.int32), inv


def is_automorphism(adj, perm) -> bool:
    adj = np.asarray(adj)
    perm = np.asarray(perm)
    if sorted(perm.tolist()) != list(range(adj.shape[0])):
        return False
    return bool(np.array_equal(adj[np.ix_(perm, perm)], adj))


def _clique_cover_bound(P: int, nbr: list[int]) -> int:
    count = 0
    while P:
        v = (P & -P).bit_length() - 1
        cand = P & nbr[v]
        P &= ~(1 << v)
        while cand:
            u = (cand & -cand).bit_length() - 1
            P &= ~(1 << u)
            cand &= nbr[u]
        count += 1
    return count


def max_independent_set(adj, record_leaves: bool = False):
    """Exact maximum independent set by branch and bound.

    Vertices are branched in increasing order, taking the vertex before
    skipping it, and a branch is cut unless it can strictly beat the
    incumbent; the returned set is therefore the lexicographically least
    maximum independent set.  With ``record_leaves`` the maximal independent
    sets reached at leaves are returned as well.
    """
    adj = np.asarray(adj)
    n = adj.shape[0]
    nbr = [int(sum(1 << int(j) for j in np.flatnonzero(adj[i]))) for i in range(n)]
    full = (1 << n) - 1
    best: list[int] = []
    leaves: list[list[int]] = []

    def closed(R):
        m = 0
        for v in R:
            m |= nbr[v] | (1 << v)
        return m

    def expand(R: list[int], P: int):
        nonlocal best
        if not P:
            if len(R) > len(best):
                best = list(R)
            if record_leaves and closed(R) == full:
                leaves.append(list(R))
            return
        if len(R) + _clique_cover_bound(P, nbr) <= len(best):
            return
        v = (P & -P).bit_length() - 1
        R.append(v)
        expand(R, P & ~nbr[v] & ~(1 << v))
        R.pop()
        expand(R, P & ~(1 << v))

    expand([], full)
    return best, leaves
