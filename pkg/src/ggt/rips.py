"""Rips complexes and exact integral simplicial homology via Smith normal
form.

The SNF runs over arbitrary-precision Python ints with minimal-absolute-value
pivot selection; homology is computed over Z so torsion is detected.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, SimplexCountError

DEFAULT_SIMPLEX_GUARD = 2 * 10**6


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplices by dimension, each a strictly increasing vertex tuple."""

    simplices: dict  # k -> tuple of tuples, sorted

    @property
    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def count(self, k):
        return len(self.simplices.get(k, ()))

    def euler_characteristic(self):
        return sum((-1) ** k * len(v) for k, v in self.simplices.items())


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of row tuples


@dataclass(frozen=True)
class HomologyResult:
    betti: dict  # degree -> rank
    torsion: dict  # degree -> tuple of invariant factors > 1


def rips_complex(m, d, dim_cap, guard=DEFAULT_SIMPLEX_GUARD):
    """All vertex subsets of pairwise distance <= d, of size <= dim_cap + 1,
    by ordered clique extension on the distance-<=-d graph."""
    if d < 0 or dim_cap < 0:
        raise InputError("d and dim_cap must be non-negative")
    n = m.n
    close = [[v for v in range(u + 1, n) if m.d(u, v) <= d] for u in range(n)]
    simplices = {0: tuple((v,) for v in range(n))}
    total = n
    current = [(v,) for v in range(n)]
    for k in range(1, dim_cap + 1):
        nxt = []
        for simp in current:
            last = simp[-1]
            for v in close[last]:
                if all(m.d(u, v) <= d for u in simp[:-1]):
                    nxt.append(simp + (v,))
                    total += 1
                    if total > guard:
                        raise SimplexCountError(
                            f"simplex count exceeds guard {guard}"
                        )
        if not nxt:
            break
        simplices[k] = tuple(nxt)
        current = nxt
    return SimplicialComplex(simplices=simplices)


def full_simplex(n, dim_cap=None):
    cap = n - 1 if dim_cap is None else min(dim_cap, n - 1)
    return SimplicialComplex(
        simplices={
            k: tuple(combinations(range(n), k + 1)) for k in range(cap + 1)
        }
    )


def boundary_matrix(sc, k):
    """Matrix of the k-th boundary operator in the complex's sorted order."""
    if k < 1 or k > sc.dim:
        raise InputError(f"boundary degree {k} out of range 1..{sc.dim}")
    lower = {s: i for i, s in enumerate(sc.simplices.get(k - 1, ()))}
    upper = sc.simplices.get(k, ())
    rows = len(lower)
    cols = len(upper)
    entries = [[0] * cols for _ in range(rows)]
    for j, simp in enumerate(upper):
        for i in range(len(simp)):
            face = simp[:i] + simp[i + 1 :]
            entries[lower[face]][j] = (-1) ** i
    return IntegerMatrix(rows=rows, cols=cols, entries=tuple(map(tuple, entries)))


def matmul(a, b):
    if a.cols != b.rows:
        raise InputError("matrix dimension mismatch")
    bt = list(zip(*b.entries)) if b.entries else []
    out = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a.entries
    )
    return IntegerMatrix(rows=a.rows, cols=b.cols, entries=out)


def smith_normal_form(m):
    """Invariant factors d1 | d2 | ... and the rank of an integer matrix.

    Elementary row/column operations with minimal-|entry| pivoting; exact.
    """
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    factors = []
    t = 0
    while t < rows and t < cols:
        # locate the nonzero entry of minimal absolute value in the
        # remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (piv is None or abs(v) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        for r in range(rows):
            a[r][t], a[r][j0] = a[r][j0], a[r][t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
                        break
            if not done:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(rows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        done = False
                        break
            if done:
                break
        # pivot must divide the rest of the block; fix up if not
        p = a[t][t]
        adjust = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % p:
                    adjust = i
                    break
            if adjust is not None:
                break
        if adjust is not None:
            for j in range(t, cols):
                a[t][j] += a[adjust][j]
            continue  # redo this pivot position
        factors.append(abs(p))
        t += 1
    return tuple(factors), len(factors)


def homology(sc, up_to):
    """Betti numbers and torsion per degree 0..up_to from SNF ranks."""
    betti = {}
    torsion = {}
    snf = {}
    for k in range(1, min(up_to + 1, sc.dim) + 1):
        snf[k] = smith_normal_form(boundary_matrix(sc, k))
    for k in range(up_to + 1):
        nk = sc.count(k)
        rk = snf.get(k, ((), 0))[1]
        rk1 = snf.get(k + 1, ((), 0))[1]
        betti[k] = nk - rk - rk1
        torsion[k] = tuple(f for f in snf.get(k + 1, ((), 0))[0] if f > 1)
    return HomologyResult(betti=betti, torsion=torsion)


def is_acyclic(hr):
    """Reduced homology vanishes in every computed degree."""
    if hr.betti.get(0) != 1:
        return False
    return all(
        b == 0 for k, b in hr.betti.items() if k > 0
    ) and all(not t for t in hr.torsion.values())


def serialize_complex(sc):
    lines = []
    for k in sorted(sc.simplices):
        lines.append(f"dim {k}")
        for simp in sc.simplices[k]:
            lines.append(" ".join(map(str, simp)))
    return "\n".join(lines) + "\n"
