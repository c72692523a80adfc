from itertools import combinations

import pytest

from ggt.cylinders import (
    CylinderAssignment,
    build_cylinder,
    check_assignment_symmetries,
    cylinder_for_pair,
    decompose_slices,
    difference,
    left_set,
    measure_tau_stability,
    right_set,
    triangle_stability,
)
from ggt.errors import (
    MissingCylinderError,
    NotInSupportError,
    TruncatedGeodesicsError,
)
from ggt.graphs import (
    Graph,
    all_pairs_distances,
    cycle_graph,
    enumerate_geodesics,
    path_graph,
)


def tripod():
    """Three length-3 legs from a center: center 0, legs 1-2-3, 4-5-6, 7-8-9."""
    edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)]
    return Graph.build(10, edges)


class TestCylinder:
    def test_c4_example(self):
        g = cycle_graph(4)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 2)
        assert c.support == (0, 1, 2, 3)
        assert c.theta == 1

    def test_path_theta_zero(self):
        g = path_graph(11)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 10)
        assert c.support == tuple(range(11))
        assert c.theta == 0

    def test_degenerate(self):
        g = cycle_graph(4)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 1, 1)
        assert c.support == (1,) and c.theta == 0
        assert decompose_slices(c).slices == (frozenset({1}),)

    def test_truncated_refused(self):
        g = cycle_graph(4)
        m = all_pairs_distances(g)
        gs = enumerate_geodesics(g, m, 0, 2, cap=1)
        with pytest.raises(TruncatedGeodesicsError):
            build_cylinder(gs, m)

    def test_require(self):
        g = path_graph(4)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 2)
        with pytest.raises(NotInSupportError):
            difference(c, 0, 3)


class TestDifference:
    def test_path_value(self):
        g = path_graph(11)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 10)
        assert difference(c, 2, 5) == -6
        assert difference(c, 5, 2) == 6

    def test_explicit_sets_match_table(self):
        g = cycle_graph(6)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 3)
        idx = {v: i for i, v in enumerate(c.support)}
        for u in c.support:
            for v in c.support:
                assert difference(c, u, v) == int(c.diff_table[idx[u], idx[v]])

    def test_laws_on_samples(self, atlas_connected):
        for g in atlas_connected[::41]:
            m = all_pairs_distances(g)
            for x in range(g.n):
                for y in range(x, g.n):
                    c = cylinder_for_pair(g, m, x, y)
                    t = c.diff_table
                    s = len(c.support)
                    rt = c.reversed().diff_table
                    for i in range(s):
                        for j in range(s):
                            assert t[i, j] == -t[j, i]
                            assert rt[i, j] == -t[i, j]
                            for k in range(s):
                                assert t[i, j] + t[j, k] == t[i, k]

    def test_left_right_sets(self):
        g = path_graph(11)
        m = all_pairs_distances(g)
        c = cylinder_for_pair(g, m, 0, 10)
        assert left_set(c, 3) == frozenset(range(4))
        assert right_set(c, 3) == frozenset(range(3, 11))


class TestSlices:
    def test_path_singletons(self):
        g = path_graph(11)
        m = all_pairs_distances(g)
        dec = decompose_slices(cylinder_for_pair(g, m, 0, 10))
        assert dec.slices == tuple(frozenset({i}) for i in range(11))

    def test_c4_single_slice(self):
        g = cycle_graph(4)
        m = all_pairs_distances(g)
        dec = decompose_slices(cylinder_for_pair(g, m, 0, 2))
        assert dec.slices == (frozenset({0, 1, 2, 3}),)

    def test_slice_lookup(self):
        g = path_graph(5)
        m = all_pairs_distances(g)
        dec = decompose_slices(cylinder_for_pair(g, m, 0, 4))
        assert dec.index_of(3) == 3
        assert dec.slice_of(2) == frozenset({2})
        with pytest.raises(NotInSupportError):
            dec.index_of(99)

    def test_bounds_on_samples(self, atlas_connected):
        for g in atlas_connected[::37]:
            m = all_pairs_distances(g)
            for x in range(g.n):
                for y in range(x, g.n):
                    c = cylinder_for_pair(g, m, x, y)
                    dec = decompose_slices(c)
                    for s in dec.slices:
                        diam = max(
                            (m.d(u, v) for u, v in combinations(sorted(s), 2)),
                            default=0,
                        )
                        assert diam <= 10 * c.theta

    def test_reversal(self, atlas_connected):
        for g in atlas_connected[::43]:
            m = all_pairs_distances(g)
            for x in range(g.n):
                for y in range(x, g.n):
                    fwd = decompose_slices(cylinder_for_pair(g, m, x, y)).slices
                    rev = decompose_slices(cylinder_for_pair(g, m, y, x)).slices
                    assert fwd == tuple(reversed(rev))


class TestStability:
    def test_triangle_path_example(self):
        g = path_graph(11)
        ca = CylinderAssignment.all_pairs(g)
        sr = triangle_stability(ca, ca.metric, 0, 10, 10)
        assert sr.k_split == 11 and sr.epsilon_observed == 0

    def test_triangle_tripod_example(self):
        g = tripod()
        ca = CylinderAssignment.all_pairs(g)
        sr = triangle_stability(ca, ca.metric, 3, 6, 9)
        assert sr.k_split == 4 and sr.epsilon_observed == 0

    def test_tau_c4_example(self):
        g = cycle_graph(4)
        ca = CylinderAssignment.all_pairs(g)
        sr = measure_tau_stability(ca, ca.metric, 0, 2, 1)
        assert sr.tau_observed == 1 and sr.witnesses == (3,)

    def test_missing_cylinder(self):
        g = cycle_graph(4)
        ca = CylinderAssignment(
            graph=g, metric=all_pairs_distances(g), cylinders={}
        )
        with pytest.raises(MissingCylinderError):
            ca.get(0, 1)


class TestSymmetries:
    def test_rotation_on_c6(self):
        from ggt.actions import generate_group

        g = cycle_graph(6)
        ca = CylinderAssignment.all_pairs(g)
        act = generate_group([(1, 2, 3, 4, 5, 0)], graph=g)
        rep = check_assignment_symmetries(ca, act)
        assert rep.ok

    def test_detects_broken_equivariance(self):
        from ggt.actions import generate_group

        g = cycle_graph(6)
        ca = CylinderAssignment.all_pairs(g)
        broken = dict(ca.cylinders)
        broken[(0, 2)] = broken[(0, 3)]
        ca2 = CylinderAssignment(graph=g, metric=ca.metric, cylinders=broken)
        act = generate_group([(1, 2, 3, 4, 5, 0)], graph=g)
        rep = check_assignment_symmetries(ca2, act)
        assert not rep.ok
