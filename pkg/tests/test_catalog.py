import pytest

from ggt.catalog import (
    GROUP_COUNTS,
    all_groups_up_to,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    groups_of_order,
    symmetric,
)
from ggt.errors import GroupError


class TestCounts:
    @pytest.mark.parametrize("n", range(1, 25))
    def test_count_per_order(self, n):
        assert len(groups_of_order(n)) == GROUP_COUNTS[n - 1]

    def test_total(self):
        assert len(all_groups_up_to(24)) == sum(GROUP_COUNTS)

    def test_out_of_range(self):
        with pytest.raises(GroupError):
            groups_of_order(25)
        with pytest.raises(GroupError):
            groups_of_order(0)


class TestDistinctness:
    def test_fingerprints_separate_same_order_classes(self):
        for n in range(1, 25):
            fps = [g.invariant_fingerprint() for g in groups_of_order(n)]
            assert len(set(fps)) == len(fps)


class TestStructure:
    def test_cyclic(self):
        c6 = cyclic(6)
        assert c6.is_abelian() and sorted(c6.element_orders()) == [1, 2, 3, 3, 6, 6]

    def test_s3(self):
        s3 = symmetric(3)
        assert not s3.is_abelian()
        assert s3.conjugacy_class_sizes() == [1, 2, 3]
        assert len(s3.derived_subgroup()) == 3

    def test_a4_no_order6_subgroup(self):
        assert all(len(h) != 6 for h in alternating(4).subgroups())

    def test_q8_unique_involution(self):
        q8 = dicyclic(2)
        assert sum(1 for i in range(8) if q8.element_order(i) == 2) == 1

    def test_s4_subgroup_count(self):
        assert len(symmetric(4).subgroups()) == 30

    def test_c2_fourth_subgroup_count(self):
        g = direct_product(
            direct_product(cyclic(2), cyclic(2)),
            direct_product(cyclic(2), cyclic(2)),
        )
        assert len(g.subgroups()) == 67

    def test_center_sizes(self):
        assert len(dihedral(4).center()) == 2
        assert len(dihedral(5).center()) == 1
        assert len(dicyclic(3).center()) == 2

    def test_closure_and_generators(self):
        s4 = symmetric(4)
        gens = s4.generating_set()
        assert s4.closure(set(gens)) == frozenset(range(24))
        assert len(gens) <= 2


class TestCayleyAction:
    def test_left_translations_are_free(self):
        from ggt.actions import generate_group, orbit_volume, verify_free_action

        for g in groups_of_order(6):
            perms = g.left_translation_perms(g.generating_set())
            act = generate_group(perms, set_size=g.order)
            assert act.order == g.order
            rep = verify_free_action(act)
            assert rep.free_on_vertices
            assert orbit_volume(act).v_invariant == 1

    def test_subset_action(self):
        s3 = symmetric(3)
        perms = s3.left_translation_perms({s3.identity})
        assert perms == [tuple(range(6))]
