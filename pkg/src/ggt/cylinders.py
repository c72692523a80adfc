"""Geodesic-union cylinders, the difference function, slice decompositions,
and empirical stability measurements.

The canonical cylinder of a pair (x, y) is the union of all geodesics from x
to y; theta is the exact maximal distance from a support vertex to a
geodesic.  All stability quantities (tau, epsilon, split index) are measured
witnesses, never assumed bounds.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._core import diff_table as _diff_table_kernel
from .errors import (
    ConsistencyError,
    InputError,
    MissingCylinderError,
    NotInSupportError,
    TruncatedGeodesicsError,
)
from .graphs import all_pairs_distances, enumerate_geodesics, gromov_product


@dataclass(frozen=True)
class Cylinder:
    endpoints: tuple
    support: tuple  # sorted vertex tuple
    theta: int
    metric: object  # Metric of the ambient graph

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.support)}

    def require(self, u):
        if u not in self._index:
            raise NotInSupportError(f"vertex {u} not in cylinder support")

    @cached_property
    def diff_table(self):
        """Antisymmetric diff matrix indexed in support order."""
        return _diff_table_kernel(
            np.ascontiguousarray(self.metric.dist),
            np.asarray(self.support, dtype=np.int64),
            self.endpoints[0],
            self.endpoints[1],
            self.theta,
        )

    def reversed(self):
        return Cylinder(
            endpoints=(self.endpoints[1], self.endpoints[0]),
            support=self.support,
            theta=self.theta,
            metric=self.metric,
        )


@dataclass(frozen=True)
class SliceDecomposition:
    cylinder: Cylinder
    slices: tuple  # ordered tuple of frozensets partitioning the support

    def slice_of(self, u):
        for s in self.slices:
            if u in s:
                return s
        raise NotInSupportError(f"vertex {u} not in cylinder support")

    def index_of(self, u):
        for i, s in enumerate(self.slices):
            if u in s:
                return i
        raise NotInSupportError(f"vertex {u} not in cylinder support")


@dataclass(frozen=True)
class StabilityReport:
    kind: str
    vertices: tuple
    tau_observed: int | None = None
    epsilon_observed: int | None = None
    k_split: int | None = None
    witnesses: tuple = ()


def build_cylinder(gs, metric):
    """Union-of-geodesics cylinder for the endpoint pair of a GeodesicSet."""
    if gs.truncated:
        raise TruncatedGeodesicsError(
            f"geodesic enumeration for {gs.endpoints} was truncated; refusing"
        )
    support = sorted({v for geo in gs.geodesics for v in geo})
    theta = 0
    for geo in gs.geodesics:
        spread = max(min(metric.d(v, p) for p in geo) for v in support)
        theta = max(theta, spread)
    return Cylinder(
        endpoints=gs.endpoints, support=tuple(support), theta=theta, metric=metric
    )


def cylinder_for_pair(g, m, x, y, cap=None):
    from .graphs import DEFAULT_GEODESIC_CAP

    gs = enumerate_geodesics(g, m, x, y, cap or DEFAULT_GEODESIC_CAP)
    return build_cylinder(gs, m)


def left_set(c, u):
    """{w in C : d(w,x) <= d(u,x) and d(u,w) >= 5 theta}."""
    c.require(u)
    x = c.endpoints[0]
    m = c.metric
    return frozenset(
        w
        for w in c.support
        if m.d(w, x) <= m.d(u, x) and m.d(u, w) >= 5 * c.theta
    )


def right_set(c, u):
    c.require(u)
    y = c.endpoints[1]
    m = c.metric
    return frozenset(
        w
        for w in c.support
        if m.d(w, y) <= m.d(u, y) and m.d(u, w) >= 5 * c.theta
    )


def difference(c, u, v):
    """The signed four-term cardinality expression, from explicit sets."""
    c.require(u)
    c.require(v)
    lu, lv = left_set(c, u), left_set(c, v)
    ru, rv = right_set(c, u), right_set(c, v)
    return len(lu - lv) - len(lv - lu) + len(rv - ru) - len(ru - rv)


def decompose_slices(c):
    """Partition the support into slices (diff == 0), ordered by diff sign.

    A transitivity failure of the diff relation would be an implementation
    bug (the cocycle identity rules it out) and raises ConsistencyError.
    """
    table = c.diff_table
    sup = c.support
    s = len(sup)
    assigned = [-1] * s
    reps = []  # representative index per slice
    for i in range(s):
        for k, r in enumerate(reps):
            if table[r, i] == 0:
                assigned[i] = k
                break
        else:
            assigned[i] = len(reps)
            reps.append(i)
    # consistency: same slice iff diff 0, and the order is total on reps
    for i in range(s):
        for j in range(s):
            same = assigned[i] == assigned[j]
            if same != (table[i, j] == 0):
                raise ConsistencyError("diff relation is not an equivalence")
    order = sorted(range(len(reps)), key=lambda k: _rank(table, reps, k))
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if table[reps[order[a]], reps[order[b]]] >= 0:
                raise ConsistencyError("slice order is not consistent")
    slices = []
    for k in order:
        slices.append(frozenset(sup[i] for i in range(s) if assigned[i] == k))
    return SliceDecomposition(cylinder=c, slices=tuple(slices))


def _rank(table, reps, k):
    # number of slices strictly before slice k
    return sum(1 for r in reps if table[r, reps[k]] < 0)


@dataclass(frozen=True)
class CylinderAssignment:
    """A total map (x, y) -> Cylinder on a declared pair set."""

    graph: object
    metric: object
    cylinders: dict

    @staticmethod
    def all_pairs(g, metric=None, cap=None):
        m = metric or all_pairs_distances(g)
        cyl = {}
        for x in range(g.n):
            for y in range(g.n):
                cyl[(x, y)] = cylinder_for_pair(g, m, x, y, cap)
        return CylinderAssignment(graph=g, metric=m, cylinders=cyl)

    def get(self, x, y):
        try:
            return self.cylinders[(x, y)]
        except KeyError:
            raise MissingCylinderError(f"no cylinder for pair ({x}, {y})") from None

    @property
    def theta_global(self):
        return max(c.theta for c in self.cylinders.values())


def triangle_stability(ca, m, x, y, z):
    """Best prefix/suffix slice match of C(x,y) against C(x,z) and C(z,y).

    Slices are compared elementwise as vertex sets (prefix i of C(x,y)
    against prefix i of C(x,z); suffix j against suffix j of C(z,y)).  The
    split k minimizing the mismatch count is reported, ties to the largest
    k; epsilon_observed is the number of unmatched slices of C(x,y).
    """
    sxy = decompose_slices(ca.get(x, y)).slices
    sxz = decompose_slices(ca.get(x, z)).slices
    szy = decompose_slices(ca.get(z, y)).slices
    n = len(sxy)
    prefix = [0] * (n + 1)
    for i in range(n):
        prefix[i + 1] = prefix[i] + (1 if i < len(sxz) and sxy[i] == sxz[i] else 0)
    suffix = [0] * (n + 2)
    for j in range(1, n + 1):  # j slices from the end
        ok = j <= len(szy) and sxy[n - j] == szy[len(szy) - j]
        suffix[j] = suffix[j - 1] + (1 if ok else 0)
    best_k, best_matched = 0, -1
    for k in range(n + 1):
        matched = prefix[k] + suffix[n - k]
        if matched >= best_matched:
            best_matched = matched
            best_k = k
    eps = n - best_matched
    unmatched = tuple(
        tuple(sorted(sxy[i]))
        for i in range(n)
        if not (
            (i < best_k and i < len(sxz) and sxy[i] == sxz[i])
            or (
                i >= best_k
                and (n - i) <= len(szy)
                and sxy[i] == szy[len(szy) - (n - i)]
            )
        )
    )
    return StabilityReport(
        kind="triangle",
        vertices=(x, y, z),
        epsilon_observed=eps,
        k_split=best_k,
        witnesses=unmatched,
    )


def measure_tau_stability(ca, m, x, y, z):
    """Symmetric difference of C(x,y) and C(x,z) inside the Gromov-product
    ball around x (half-integer radius floored)."""
    cxy = ca.get(x, y)
    cxz = ca.get(x, z)
    radius = int(gromov_product(m, y, z, x) // 1)  # floor of (y.z)_x
    ball = m.ball(x, radius)
    f = (set(cxy.support) & ball) ^ (set(cxz.support) & ball)
    return StabilityReport(
        kind="tau",
        vertices=(x, y, z),
        tau_observed=len(f),
        witnesses=tuple(sorted(f)),
    )


@dataclass(frozen=True)
class SymmetryReport:
    equivariance_violations: tuple  # (generator index, x, y)
    inversion_violations: tuple  # (x, y)
    slice_reversal_violations: tuple  # (x, y)

    @property
    def ok(self):
        return not (
            self.equivariance_violations
            or self.inversion_violations
            or self.slice_reversal_violations
        )


def check_assignment_symmetries(ca, action):
    """Exhaustive check of G-equivariance and inversion invariance of an
    assignment, including reversed slice order under endpoint reversal."""
    eq_bad = []
    for gi, perm in enumerate(action.elements):
        for (x, y), c in sorted(ca.cylinders.items()):
            gx, gy = perm[x], perm[y]
            try:
                target = ca.get(gx, gy)
            except MissingCylinderError:
                raise InputError(
                    "assignment is not closed under the action"
                ) from None
            moved = frozenset(perm[v] for v in c.support)
            if moved != frozenset(target.support):
                eq_bad.append((gi, x, y))
    inv_bad = []
    rev_bad = []
    for (x, y), c in sorted(ca.cylinders.items()):
        try:
            back = ca.get(y, x)
        except MissingCylinderError:
            continue
        if frozenset(c.support) != frozenset(back.support):
            inv_bad.append((x, y))
            continue
        fwd = decompose_slices(c).slices
        rev = decompose_slices(back).slices
        if fwd != tuple(reversed(rev)):
            rev_bad.append((x, y))
    return SymmetryReport(
        equivariance_violations=tuple(eq_bad),
        inversion_violations=tuple(inv_bad),
        slice_reversal_violations=tuple(rev_bad),
    )
