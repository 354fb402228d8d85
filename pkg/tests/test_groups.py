"""Tests for permutation groups (stabilizer chains) and group tables."""

import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from digsym.errors import (
    BudgetExceeded,
    DegreeMismatch,
    NotSubgroupElement,
    NotTransitive,
    ParseError,
    PartitionInvalid,
    PartitionNotInvariant,
)
from digsym.groups import GroupTable, PermGroup, table_from_text, table_to_text
from digsym.perm import Permutation, parse_cycles


def group(*cycle_texts, degree):
    return PermGroup([parse_cycles(t, degree) for t in cycle_texts], degree)


def s4():
    return group("(0 1)", "(0 1 2 3)", degree=4)


def a5():
    return group("(0 1 2 3 4)", "(0 1 2)", degree=5)


@st.composite
def generator_sets(draw):
    degree = draw(st.integers(min_value=2, max_value=6))
    count = draw(st.integers(min_value=1, max_value=3))
    gens = [
        Permutation(draw(st.permutations(range(degree)))) for _ in range(count)
    ]
    return degree, gens


class TestOrderAndMembership:
    def test_cyclic(self):
        assert group("(0 1 2 3 4 5)", degree=6).order() == 6

    def test_s4(self):
        assert s4().order() == 24

    def test_trivial(self):
        assert PermGroup((), degree=3).order() == 1

    def test_contains(self):
        g = s4()
        assert parse_cycles("(0 2)", 4) in g
        assert parse_cycles("(0 1 2)", 4) in g

    def test_not_contains(self):
        g = group("(0 1 2)", degree=4)
        assert parse_cycles("(0 1)", 4) not in g

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            PermGroup([parse_cycles("(0 1)", 2), parse_cycles("(0 1)", 3)])

    def test_elements_match_closure(self):
        g = s4()
        elements = {p.images for p in g.elements()}
        assert elements == oracles.brute_closure([p.images for p in g.generators], 4)

    def test_elements_budget(self):
        with pytest.raises(BudgetExceeded):
            group("(0 1)", "(0 1 2 3 4 5 6)", degree=7).elements(limit=100)

    @settings(max_examples=60, deadline=None)
    @given(generator_sets())
    def test_order_matches_brute_closure(self, data):
        degree, gens = data
        g = PermGroup(gens, degree)
        assert g.order() == len(
            oracles.brute_closure([p.images for p in gens], degree)
        )

    @settings(max_examples=30, deadline=None)
    @given(generator_sets())
    def test_membership_matches_brute_closure(self, data):
        degree, gens = data
        g = PermGroup(gens, degree)
        closure = oracles.brute_closure([p.images for p in gens], degree)
        for images in closure:
            assert g.contains(Permutation(images))


class TestOrbits:
    def test_partition_by_rotation(self):
        g = group("(0 3)(1 4)(2 5)", degree=6)
        assert g.orbit_partition() == [(0, 3), (1, 4), (2, 5)]

    def test_single_orbit(self):
        assert group("(0 1 2 3 4 5)", degree=6).orbit_partition() == [tuple(range(6))]

    def test_two_orbits_of_pairs(self):
        g = group("(0 1)(2 3)", degree=4)
        assert g.orbit_partition() == [(0, 1), (2, 3)]

    def test_orbit(self):
        assert group("(0 1)(2 3)", degree=4).orbit(2) == {2, 3}

    @settings(max_examples=40, deadline=None)
    @given(generator_sets())
    def test_orbit_stabilizer(self, data):
        degree, gens = data
        g = PermGroup(gens, degree)
        for point in range(degree):
            stab = g.tuple_stabilizer((point,))
            assert len(g.orbit(point)) * stab.order() == g.order()


class TestStabilizers:
    def test_s4_point_stabilizer(self):
        stab = s4().tuple_stabilizer((0,))
        assert stab.order() == 6
        assert all(p(0) == 0 for p in stab.generators)

    def test_arc_regular_stabilizer_trivial(self):
        f21 = group("(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)", degree=7)
        assert f21.order() == 21
        assert f21.tuple_stabilizer((0, 1)).order() == 1

    def test_empty_tuple(self):
        assert s4().tuple_stabilizer(()).order() == 24

    def test_stabilizer_fixes_points(self):
        g = a5()
        stab = g.tuple_stabilizer((1, 3))
        for p in stab.generators:
            assert p(1) == 1 and p(3) == 3


class TestNormalClosure:
    def test_three_cycle_in_s3(self):
        s3 = group("(0 1)", "(0 1 2)", degree=3)
        closure = s3.normal_closure([parse_cycles("(0 1 2)", 3)])
        assert closure.order() == 3

    def test_klein_in_s4(self):
        closure = s4().normal_closure([parse_cycles("(0 1)(2 3)", 4)])
        assert closure.order() == 4

    def test_closure_is_normal(self):
        g = s4()
        closure = g.normal_closure([parse_cycles("(0 1 2)", 4)])
        assert closure.order() == 12
        assert g.is_normal(closure)

    def test_abelian_subgroup_normal(self):
        c6 = group("(0 1 2 3 4 5)", degree=6)
        rot3 = group("(0 3)(1 4)(2 5)", degree=6)
        assert c6.is_normal(rot3)

    def test_outside_element_rejected(self):
        with pytest.raises(NotSubgroupElement):
            group("(0 1 2)", degree=3).normal_closure([parse_cycles("(0 1)", 3)])

    def test_non_normal_detected(self):
        assert not s4().is_normal(group("(0 1)", degree=4))

    def test_matches_brute_closure(self):
        g = s4()
        for seed in ("(0 1)(2 3)", "(0 1 2)", "(0 1)"):
            lib = g.normal_closure([parse_cycles(seed, 4)])
            all_elems = oracles.brute_closure([p.images for p in g.generators], 4)
            seed_t = parse_cycles(seed, 4).images
            conjugates = {
                oracles.mult(oracles.mult(oracles.inv(x), seed_t), x) for x in all_elems
            }
            brute = oracles.brute_subgroup_closure(conjugates, 4)
            assert lib.order() == len(brute)


class TestTransitivityPredicates:
    def test_rotation_group(self):
        g = group("(0 1 2 3 4 5)", degree=6)
        assert g.is_transitive() and g.is_regular() and g.is_semiregular()

    def test_s4_not_regular(self):
        assert s4().is_transitive() and not s4().is_regular()

    def test_semiregular_not_transitive(self):
        g = group("(0 1)(2 3)(4 5)", degree=6)
        assert g.is_semiregular() and not g.is_transitive()


class TestQuasiprimitivity:
    def test_a5_quasiprimitive(self):
        assert a5().is_quasiprimitive()
        assert not a5().is_biquasiprimitive()

    def test_regular_c6_neither(self):
        c6 = group("(0 1 2 3 4 5)", degree=6)
        assert not c6.is_quasiprimitive()
        assert not c6.is_biquasiprimitive()

    def test_regular_c4_biquasiprimitive(self):
        c4 = group("(0 1 2 3)", degree=4)
        assert not c4.is_quasiprimitive()
        assert c4.is_biquasiprimitive()

    def test_requires_transitive(self):
        with pytest.raises(NotTransitive):
            group("(0 1)", degree=3).is_quasiprimitive()
        with pytest.raises(NotTransitive):
            group("(0 1)", degree=3).is_biquasiprimitive()

    def test_mutually_exclusive_on_samples(self):
        for g in (a5(), s4(), group("(0 1 2 3)", degree=4), group("(0 1 2 3 4)", degree=5)):
            quasi = g.is_quasiprimitive()
            biquasi = g.is_biquasiprimitive()
            assert not (quasi and biquasi)


class TestSolubility:
    def test_s4_soluble(self):
        assert s4().is_soluble()

    def test_a5_not_soluble(self):
        assert not a5().is_soluble()

    def test_frobenius_21_soluble(self):
        f21 = group("(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)", degree=7)
        assert f21.is_soluble()

    def test_derived_series_length(self):
        f21 = group("(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)", degree=7)
        derived = f21.derived_subgroup()
        assert derived.order() == 7
        assert derived.derived_subgroup().order() == 1


class TestBlockAction:
    def test_c6_on_three_blocks(self):
        g = group("(0 1 2 3 4 5)", degree=6)
        image, kernel = g.induced_block_action([(0, 3), (1, 4), (2, 5)])
        assert image.order() == 3 and kernel.order() == 2
        assert image.order() * kernel.order() == g.order()

    def test_singleton_blocks(self):
        g = s4()
        image, kernel = g.induced_block_action([(i,) for i in range(4)])
        assert image.order() == 24 and kernel.order() == 1

    def test_dihedral_subgroup_on_two_blocks(self):
        g = group("(0 1)", "(2 3)", "(0 2)(1 3)", degree=4)
        image, kernel = g.induced_block_action([(0, 1), (2, 3)])
        assert image.order() == 2
        assert image.order() * kernel.order() == g.order()

    def test_invalid_partition(self):
        with pytest.raises(PartitionInvalid):
            s4().induced_block_action([(0, 1), (1, 2, 3)])

    def test_non_invariant_partition(self):
        with pytest.raises(PartitionNotInvariant):
            s4().induced_block_action([(0, 1), (2, 3)])


class TestCandidateNormalSubgroups:
    def test_c6(self):
        groups, complete = group("(0 1 2 3 4 5)", degree=6).candidate_normal_subgroups()
        assert complete
        assert sorted(g.order() for g in groups) == [2, 3, 6]

    def test_a5_only_itself(self):
        groups, complete = a5().candidate_normal_subgroups()
        assert complete
        assert [g.order() for g in groups] == [60]

    def test_s4_lattice(self):
        groups, complete = s4().candidate_normal_subgroups()
        assert complete
        assert sorted(g.order() for g in groups) == [4, 12, 24]

    def test_all_candidates_normal(self):
        g = s4()
        for cand in g.candidate_normal_subgroups().groups:
            assert g.is_normal(cand)

    def test_budget_marks_incomplete(self):
        groups, complete = s4().candidate_normal_subgroups(budget=1)
        assert not complete
        assert groups


class TestChainConcurrency:
    def test_concurrent_first_use(self):
        g = group("(0 1)", "(0 1 2 3 4 5 6)", degree=7)
        orders = []
        threads = [
            threading.Thread(target=lambda: orders.append(g.order()))
            for _ in range(8)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert orders == [5040] * 8


class TestGroupTable:
    def test_cyclic_order_of(self):
        from digsym.construct import cyclic_table

        z7 = cyclic_table(7)
        assert z7.order_of(3) == 7
        assert z7.order_of(0) == 1

    def test_inverse_and_identity(self):
        from digsym.construct import cyclic_table

        z6 = cyclic_table(6)
        assert z6.identity == 0
        assert z6.inverse(2) == 4

    def test_rejects_non_associative(self):
        # Swap two entries of Z_3 to break associativity.
        rows = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
        with pytest.raises(ValueError):
            GroupTable(rows)

    def test_rejects_no_identity(self):
        with pytest.raises(ValueError):
            GroupTable([[0, 0], [0, 0]])

    def test_generated_subset(self):
        from digsym.construct import cyclic_table

        z6 = cyclic_table(6)
        assert z6.generated_subset([2]) == {0, 2, 4}
        assert z6.generated_subset([2, 3]) == set(range(6))

    def test_generating_set(self):
        from digsym.construct import cyclic_table

        z12 = cyclic_table(12)
        gens = z12.generating_set()
        assert z12.generated_subset(gens) == set(range(12))

    def test_text_round_trip(self):
        from digsym.construct import dihedral_table

        d4 = dihedral_table(4)
        back = table_from_text(table_to_text(d4))
        assert back.mul_table == d4.mul_table

    def test_text_errors(self):
        with pytest.raises(ParseError):
            table_from_text("order 2\n0 1\n")
        with pytest.raises(ParseError):
            table_from_text("order 2\n0 1\n1 x\n")
