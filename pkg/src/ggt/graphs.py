"""Finite simple graphs, the path metric, Gromov products, the four-point
constant, and exhaustive geodesic enumeration.

Everything is exact: distances are ints, Gromov products and the four-point
constant are half-integers held in Fraction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._core import all_pairs_bfs, four_point_gap
from .errors import DisconnectedGraphError, GraphFormatError, InputError

DEFAULT_GEODESIC_CAP = 10**6


@dataclass(frozen=True)
class Graph:
    """Finite connected simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple  # sorted tuple of sorted pairs
    labels: tuple | None = None

    def __post_init__(self):
        if self.n <= 0:
            raise InputError("vertex count must be positive")
        seen = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphFormatError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphFormatError(f"edge {e} out of range")
            if i > j:
                raise GraphFormatError(f"edge {e} not normalized")
            if e in seen:
                raise GraphFormatError(f"multi-edge {e}")
            seen.add(e)
        # connectivity (single component)
        reached = {0}
        stack = [0]
        nbrs = self.neighbors
        while stack:
            for v in nbrs[stack.pop()]:
                if v not in reached:
                    reached.add(v)
                    stack.append(v)
        if len(reached) != self.n:
            raise DisconnectedGraphError(
                f"graph is disconnected ({len(reached)} of {self.n} vertices reachable)"
            )

    @staticmethod
    def build(n, edges, labels=None):
        norm = tuple(sorted(tuple(sorted(e)) for e in edges))
        return Graph(n, norm, tuple(labels) if labels else None)

    @cached_property
    def neighbors(self):
        nbrs = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def _csr(self):
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for i, a in enumerate(self.neighbors):
            indptr[i + 1] = indptr[i] + len(a)
        indices = np.fromiter(
            (v for a in self.neighbors for v in a), dtype=np.int64, count=indptr[-1]
        )
        return indptr, indices

    def relabel(self, perm):
        """Graph with vertex i renamed perm[i]."""
        return Graph.build(self.n, [(perm[i], perm[j]) for i, j in self.edges])


@dataclass(frozen=True)
class Metric:
    """All-pairs shortest path distances of a graph (edge-count metric)."""

    n: int
    dist: np.ndarray = field(repr=False, compare=False)

    def d(self, u, v):
        return int(self.dist[u, v])

    @property
    def diameter(self):
        return int(self.dist.max())

    def ball(self, center, radius):
        return frozenset(int(v) for v in np.flatnonzero(self.dist[center] <= radius))


@dataclass(frozen=True)
class GeodesicSet:
    endpoints: tuple
    geodesics: tuple  # tuple of vertex tuples
    truncated: bool


@dataclass(frozen=True)
class HyperbolicityReport:
    delta4: Fraction


def parse_graph(text):
    """Parse the line-oriented graph format: `v <n>`, then `e <i> <j>` lines,
    `#` comments."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if n is not None:
                raise GraphFormatError("duplicate v line", lineno)
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) <= 0:
                raise GraphFormatError("expected `v <n>` with n > 0", lineno)
            n = int(parts[1])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before v line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("expected `e <i> <j>`", lineno)
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer edge endpoint", lineno) from None
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"endpoint out of range 0..{n - 1}", lineno)
            if i == j:
                raise GraphFormatError("self-loop", lineno)
            e = (min(i, j), max(i, j))
            if e in edges:
                raise GraphFormatError(f"multi-edge {e}", lineno)
            edges.append(e)
        else:
            raise GraphFormatError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing v line")
    return Graph.build(n, edges)


def serialize_graph(g):
    lines = [f"v {g.n}"]
    lines.extend(f"e {i} {j}" for i, j in sorted(g.edges))
    return "\n".join(lines) + "\n"


def all_pairs_distances(g):
    indptr, indices = g._csr
    dist = all_pairs_bfs(indptr, indices)
    return Metric(g.n, dist)


def gromov_product(m, x, y, z):
    """(y.z)_x as an exact half-integer."""
    return Fraction(m.d(x, y) + m.d(x, z) - m.d(y, z), 2)


def four_point_delta(m):
    """Exhaustive four-point constant over all vertex quadruples."""
    gap = four_point_gap(np.ascontiguousarray(m.dist))
    return HyperbolicityReport(delta4=Fraction(gap, 2))


def enumerate_geodesics(g, m, x, y, cap=DEFAULT_GEODESIC_CAP):
    """All geodesics from x to y (depth-first over distance-decreasing
    neighbors, neighbor index order).  At most `cap` are returned; the
    truncated flag is set if more exist."""
    if cap < 1:
        raise InputError("cap must be >= 1")
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise InputError(f"vertex out of range: ({x}, {y})")
    out = []
    truncated = False
    path = [x]

    def walk(u):
        nonlocal truncated
        if truncated:
            return
        if u == y:
            if len(out) == cap:
                truncated = True
            else:
                out.append(tuple(path))
            return
        du = m.d(u, y)
        for w in g.neighbors[u]:
            if m.d(w, y) == du - 1:
                path.append(w)
                walk(w)
                path.pop()
                if truncated:
                    return

    walk(x)
    return GeodesicSet(endpoints=(x, y), geodesics=tuple(out), truncated=truncated)


def path_graph(n):
    return Graph.build(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def automorphism_group_perms(g):
    """All adjacency-preserving vertex permutations, by brute force.

    Only sensible for small graphs (used by symmetry checks and tests).
    """
    from itertools import permutations

    eset = set(g.edges)
    degs = tuple(len(a) for a in g.neighbors)
    out = []
    for p in permutations(range(g.n)):
        if any(degs[i] != degs[p[i]] for i in range(g.n)):
            continue
        if all((min(p[i], p[j]), max(p[i], p[j])) in eset for i, j in g.edges):
            out.append(p)
    return out
