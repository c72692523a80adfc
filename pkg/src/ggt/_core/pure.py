"""Pure-python (numpy) implementations of the hot kernels.

Same signatures as the compiled extension in ``_speedups.pyx``; used as the
fallback when the extension is not built (or when GGT_FORCE_PURE is set).
All arithmetic stays in int64 -- distances and diff values on desk-scale
graphs are tiny.
"""

import numpy as np

BACKEND = "pure"


def all_pairs_bfs(indptr, indices):
    """Exact BFS distances from every vertex, CSR adjacency input.

    Unreachable pairs keep distance -1 (callers reject disconnected graphs).
    """
    n = len(indptr) - 1
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in indices[indptr[u]:indptr[u + 1]]:
                    if row[v] < 0:
                        row[v] = d
                        nxt.append(v)
            frontier = nxt
    return dist


def four_point_gap(dist):
    """Max over vertex quadruples of (largest - second largest) of the three
    pairwise distance sums.  Returns an int (twice the four-point constant)."""
    n = dist.shape[0]
    best = 0
    for a in range(n):
        da = dist[a]
        for b in range(a + 1, n):
            dab = dist[a, b]
            db = dist[b]
            for c in range(b + 1, n):
                s1 = dab + dist[c]
                s2 = da[c] + db
                s3 = da + db[c]
                for d in range(c + 1, n):
                    x, y, z = s1[d], s2[d], s3[d]
                    if x < y:
                        x, y = y, x
                    if x < z:
                        x, z = z, x
                    if y < z:
                        y = z
                    if x - y > best:
                        best = x - y
    return int(best)


def diff_table(dist, support, x, y, theta):
    """Antisymmetric table of the four-term set-difference expression over a
    cylinder support.

    Membership of the left/right sets is materialized explicitly as boolean
    matrices and the four cardinalities are counted from them.
    """
    sup = np.asarray(support, dtype=np.int64)
    s = len(sup)
    dx = dist[sup, x]
    dy = dist[sup, y]
    dsub = dist[np.ix_(sup, sup)]
    far = dsub >= 5 * theta
    # L[i, j]: support[j] belongs to the left set of support[i]
    L = (dx[None, :] <= dx[:, None]) & far
    R = (dy[None, :] <= dy[:, None]) & far
    table = np.zeros((s, s), dtype=np.int64)
    for i in range(s):
        li, ri = L[i], R[i]
        for j in range(i + 1, s):
            lj, rj = L[j], R[j]
            d = (
                int(np.count_nonzero(li & ~lj))
                - int(np.count_nonzero(lj & ~li))
                + int(np.count_nonzero(rj & ~ri))
                - int(np.count_nonzero(ri & ~rj))
            )
            table[i, j] = d
            table[j, i] = -d
    return table
