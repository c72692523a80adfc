# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled kernels: BFS distances, four-point gap, cylinder diff tables.

Mirrors ggt._core.pure; keep the two in sync (the benchmark and the test
suite compare them entry for entry).
"""

import numpy as np

cimport numpy as cnp

BACKEND = "compiled"


def all_pairs_bfs(cnp.int64_t[:] indptr, cnp.int64_t[:] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.full((n, n), -1, dtype=np.int64)
    cdef cnp.int64_t[:, :] dist = out
    queue_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[:] queue = queue_arr
    cdef Py_ssize_t s, head, tail, u, v, k
    for s in range(n):
        dist[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if dist[s, v] < 0:
                    dist[s, v] = dist[s, u] + 1
                    queue[tail] = v
                    tail += 1
    return out


def four_point_gap(cnp.int64_t[:, :] dist):
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t a, b, c, d
    cdef cnp.int64_t best = 0, s1, s2, s3, hi, mid, tmp
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    s1 = dist[a, b] + dist[c, d]
                    s2 = dist[a, c] + dist[b, d]
                    s3 = dist[a, d] + dist[b, c]
                    hi = s1
                    mid = s2
                    if mid > hi:
                        tmp = hi
                        hi = mid
                        mid = tmp
                    if s3 > hi:
                        mid = hi
                        hi = s3
                    elif s3 > mid:
                        mid = s3
                    if hi - mid > best:
                        best = hi - mid
    return int(best)


def diff_table(cnp.int64_t[:, :] dist, support, cnp.int64_t x, cnp.int64_t y,
               cnp.int64_t theta):
    sup_arr = np.asarray(support, dtype=np.int64)
    cdef cnp.int64_t[:] sup = sup_arr
    cdef Py_ssize_t s = sup.shape[0]
    cdef cnp.int64_t thr = 5 * theta
    Lm = np.zeros((s, s), dtype=np.uint8)
    Rm = np.zeros((s, s), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] L = Lm
    cdef cnp.uint8_t[:, :] R = Rm
    cdef Py_ssize_t i, j, w
    for i in range(s):
        for j in range(s):
            if dist[sup[i], sup[j]] >= thr:
                if dist[sup[j], x] <= dist[sup[i], x]:
                    L[i, j] = 1
                if dist[sup[j], y] <= dist[sup[i], y]:
                    R[i, j] = 1
    out = np.zeros((s, s), dtype=np.int64)
    cdef cnp.int64_t[:, :] table = out
    cdef cnp.int64_t d
    for i in range(s):
        for j in range(i + 1, s):
            d = 0
            for w in range(s):
                if L[i, w] and not L[j, w]:
                    d += 1
                if L[j, w] and not L[i, w]:
                    d -= 1
                if R[j, w] and not R[i, w]:
                    d += 1
                if R[i, w] and not R[j, w]:
                    d -= 1
            table[i, j] = d
            table[j, i] = -d
    return out
