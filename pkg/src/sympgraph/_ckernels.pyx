# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; behaviour mirrors _kernels_py exactly."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _row_cmp(int32_t[:, ::1] cnt, int a, int b, int nc) nogil:
    cdef int j
    for j in range(nc):
        if cnt[a, j] != cnt[b, j]:
            return -1 if cnt[a, j] < cnt[b, j] else 1
    return -1 if a < b else (1 if a > b else 0)


def refine(adj, lab, starts):
    cdef const cnp.uint8_t[:, ::1] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef int n = A.shape[0]
    cdef int32_t[::1] L = np.array(lab, dtype=np.int32)
    cdef int32_t[::1] newL = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] cell_of = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] is_start = np.zeros(n + 1, dtype=np.int32)
    cdef int32_t[::1] new_start = np.zeros(n + 1, dtype=np.int32)
    cdef int32_t[:, ::1] cnt
    cdef int nc, c, i, j, lo, hi, v, u, key, pos
    cdef bint changed
    for s0 in starts:
        is_start[<int>s0] = 1

    while True:
        nc = 0
        for i in range(n):
            if is_start[i]:
                nc += 1
            cell_of[L[i]] = nc - 1
        cnt = np.zeros((n, nc), dtype=np.int32)
        with nogil:
            for v in range(n):
                for u in range(n):
                    if A[v, u]:
                        cnt[v, cell_of[u]] += 1
            changed = False
            lo = 0
            while lo < n:
                hi = lo + 1
                while hi < n and not is_start[hi]:
                    hi += 1
                # insertion sort of L[lo:hi] by (count row, vertex)
                for i in range(lo, hi):
                    newL[i] = L[i]
                for i in range(lo + 1, hi):
                    key = newL[i]
                    pos = i - 1
                    while pos >= lo and _row_cmp(cnt, newL[pos], key, nc) > 0:
                        newL[pos + 1] = newL[pos]
                        pos -= 1
                    newL[pos + 1] = key
                new_start[lo] = 1
                for i in range(lo + 1, hi):
                    new_start[i] = 0
                    for j in range(nc):
                        if cnt[newL[i], j] != cnt[newL[i - 1], j]:
                            new_start[i] = 1
                            changed = True
                            break
                lo = hi
            for i in range(n):
                L[i] = newL[i]
                is_start[i] = new_start[i]
        if not changed:
            break

    st = np.flatnonzero(np.asarray(is_start[:n])).astype(np.int32)
    lab_out = np.asarray(L).copy()
    sizes = np.diff(np.append(st, n))
    quotient = np.asarray(cnt)[lab_out[st]]
    inv = np.concatenate([sizes, quotient.ravel()]).astype(np.int64)
    return lab_out, st, inv


def is_automorphism(adj, perm):
    cdef const cnp.uint8_t[:, ::1] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef int n = A.shape[0]
    cdef const int32_t[::1] P = np.ascontiguousarray(perm, dtype=np.int32)
    cdef cnp.uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef int i, j
    cdef bint ok = True
    if P.shape[0] != n:
        return False
    for i in range(n):
        if P[i] < 0 or P[i] >= n or seen[P[i]]:
            return False
        seen[P[i]] = 1
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if A[i, j] != A[P[i], P[j]]:
                    ok = False
                    break
            if not ok:
                break
    return ok


cdef int _cover_bound(uint64_t P, uint64_t* nbr) nogil:
    cdef int count = 0
    cdef int v, u
    cdef uint64_t cand
    while P:
        v = __builtin_ctzll(P)
        cand = P & nbr[v]
        P &= ~((<uint64_t>1) << v)
        while cand:
            u = __builtin_ctzll(cand)
            P &= ~((<uint64_t>1) << u)
            cand &= nbr[u]
        count += 1
    return count


cdef class _MIS:
    cdef uint64_t nbr[64]
    cdef uint64_t full
    cdef int n
    cdef int R[64]
    cdef int best[64]
    cdef int nbest
    cdef bint record
    cdef list leaves

    cdef void expand(self, int depth, uint64_t P):
        cdef int v, i
        cdef uint64_t closed
        if not P:
            if depth > self.nbest:
                self.nbest = depth
                for i in range(depth):
                    self.best[i] = self.R[i]
            if self.record:
                closed = 0
                for i in range(depth):
                    closed |= self.nbr[self.R[i]] | ((<uint64_t>1) << self.R[i])
                if closed == self.full:
                    self.leaves.append([self.R[i] for i in range(depth)])
            return
        if depth + _cover_bound(P, self.nbr) <= self.nbest:
            return
        v = __builtin_ctzll(P)
        self.R[depth] = v
        self.expand(depth + 1, P & ~self.nbr[v] & ~((<uint64_t>1) << v))
        self.expand(depth, P & ~((<uint64_t>1) << v))


def max_independent_set(adj, record_leaves=False):
    A = np.asarray(adj)
    cdef int n = A.shape[0]
    if n > 64:
        from ._kernels_py import max_independent_set as fallback
        return fallback(adj, record_leaves)
    cdef _MIS s = _MIS()
    cdef int i, j
    s.n = n
    s.full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    for i in range(n):
        s.nbr[i] = 0
        for j in range(n):
            if A[i, j]:
                s.nbr[i] |= (<uint64_t>1) << j
    s.nbest = 0
    s.record = record_leaves
    s.leaves = []
    if n:
        s.expand(0, s.full)
    return [s.best[i] for i in range(s.nbest)], s.leaves
