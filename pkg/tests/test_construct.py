"""Tests for family builders, Cayley digraphs and quotients."""

import pytest

import oracles
from digsym.construct import (
    abelian_table,
    aut_preserving_conn,
    cayley_digraph,
    cayley_holomorph_action,
    cayley_spec,
    cayley_spec_from_text,
    cayley_spec_to_text,
    circuit,
    complete,
    cyclic_table,
    dihedral_table,
    is_normal_cayley,
    paley_tournament,
    parse_group_spec,
    quotient_digraph,
    right_translations,
    table_automorphisms,
)
from digsym.digraph import DIRECTED, UNDIRECTED, build
from digsym.errors import (
    BadParameter,
    BoundExceeded,
    IdentityInConnectionSet,
    NotAntisymmetric,
    NotNormal,
    ParseError,
    PartitionInvalid,
    TranslationNotInG,
)
from digsym.groups import PermGroup
from digsym.perm import parse_cycles
from digsym.symmetry import automorphism_group, is_s_arc_transitive, is_vertex_transitive


class TestFamilies:
    def test_circuit(self):
        g = circuit(4)
        assert g.valency() == 1 and g.diameter() == 3
        assert g.symmetry_class == DIRECTED

    def test_circuit_too_small(self):
        with pytest.raises(BadParameter):
            circuit(2)

    def test_complete(self):
        g = complete(4)
        assert g.symmetry_class == UNDIRECTED and len(g.arcs) == 12

    def test_paley_out_neighbors(self):
        assert paley_tournament(7).out_neighbors(0) == {1, 2, 4}

    def test_paley_rejects_one_mod_four(self):
        with pytest.raises(BadParameter):
            paley_tournament(5)

    def test_paley_rejects_composite(self):
        with pytest.raises(BadParameter):
            paley_tournament(15)

    def test_paley_matches_residues(self):
        q = 11
        g = paley_tournament(q)
        assert g.out_neighbors(0) == oracles.quadratic_residues(q)


class TestTables:
    def test_cyclic(self):
        z5 = cyclic_table(5)
        assert z5.order == 5 and z5.is_abelian()

    def test_abelian_factors(self):
        t = abelian_table([2, 4])
        assert t.order == 8 and t.is_abelian()
        orders = sorted(t.order_of(x) for x in range(8))
        assert orders == [1, 2, 2, 2, 4, 4, 4, 4]

    def test_dihedral(self):
        d4 = dihedral_table(4)
        assert d4.order == 8 and not d4.is_abelian()
        assert sorted(d4.order_of(x) for x in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]

    def test_parse_group_spec(self):
        assert parse_group_spec("cyclic:6").order == 6
        assert parse_group_spec("abelian:2x3").order == 6
        assert parse_group_spec("dihedral:5").order == 10
        with pytest.raises(BadParameter):
            parse_group_spec("simple:60")

    def test_table_automorphism_counts(self):
        assert len(table_automorphisms(cyclic_table(7))) == 6
        assert len(table_automorphisms(cyclic_table(12))) == 4
        assert len(table_automorphisms(dihedral_table(4))) == 8
        assert len(table_automorphisms(abelian_table([2, 2]))) == 6

    def test_table_automorphism_bound(self):
        with pytest.raises(BoundExceeded):
            table_automorphisms(cyclic_table(70))

    def test_table_spec_reads_file(self, tmp_path):
        from digsym.groups import table_to_text

        path = tmp_path / "d4.tbl"
        path.write_text(table_to_text(dihedral_table(4)))
        table = parse_group_spec(f"table:{path}")
        assert table.order == 8 and not table.is_abelian()


class TestCayleySpec:
    def test_identity_rejected(self):
        with pytest.raises(IdentityInConnectionSet):
            cayley_spec(cyclic_table(5), [0, 1])

    def test_inverse_pair_rejected(self):
        with pytest.raises(NotAntisymmetric):
            cayley_spec(cyclic_table(5), [1, 4])

    def test_involution_rejected(self):
        with pytest.raises(NotAntisymmetric):
            cayley_spec(cyclic_table(6), [3])

    def test_generates_flag(self):
        assert cayley_spec(cyclic_table(6), [1, 2]).generates
        assert not cayley_spec(cyclic_table(6), [2]).generates

    def test_text_round_trip(self):
        spec = cayley_spec(cyclic_table(7), [1, 2, 4])
        text = cayley_spec_to_text(spec, "cyclic:7")
        back = cayley_spec_from_text(text)
        assert back.conn == spec.conn and back.table.order == 7

    def test_text_errors(self):
        with pytest.raises(ParseError):
            cayley_spec_from_text("group cyclic:7\n")
        with pytest.raises(ParseError):
            cayley_spec_from_text("group nope:7\nconn 1\n")


class TestCayleyDigraph:
    def test_z5_circuit(self):
        g = cayley_digraph(cayley_spec(cyclic_table(5), [1]))
        assert g.arcs == circuit(5).arcs

    def test_z7_paley(self):
        g = cayley_digraph(cayley_spec(cyclic_table(7), [1, 2, 4]))
        assert g.arcs == paley_tournament(7).arcs

    def test_z6_two_generators(self):
        g = cayley_digraph(cayley_spec(cyclic_table(6), [1, 2]))
        assert g.valency() == 2 and g.is_strongly_connected()

    def test_connectivity_iff_generates(self):
        for conn in ([1], [2], [2, 3], [4]):
            try:
                spec = cayley_spec(cyclic_table(6), conn)
            except NotAntisymmetric:
                continue
            g = cayley_digraph(spec)
            assert g.is_strongly_connected() == spec.generates, conn

    def test_translations_act_vertex_transitively(self):
        spec = cayley_spec(abelian_table([2, 4]), [1, 5])
        g = cayley_digraph(spec)
        translations = right_translations(spec.table)
        assert is_vertex_transitive(g, translations)
        assert translations.is_regular()

    def test_nonabelian_translations_preserve_arcs(self):
        # Right translations commute with the left-multiplication arcs.
        d6 = dihedral_table(6)
        spec = cayley_spec(d6, [1, 2])  # rotations r, r^2 (not generating)
        g = cayley_digraph(spec)
        translations = right_translations(d6)
        for p in translations.generators:
            assert all((p(u), p(v)) in g.arcs for u, v in g.arcs)


class TestHolomorphAction:
    def test_aut_preserving_conn_paley(self):
        spec = cayley_spec(cyclic_table(7), [1, 2, 4])
        auts = aut_preserving_conn(spec)
        assert len(auts) == 3

    def test_aut_preserving_conn_trivial(self):
        spec = cayley_spec(cyclic_table(5), [1])
        assert len(aut_preserving_conn(spec)) == 1

    def test_holomorph_order_21(self):
        spec = cayley_spec(cyclic_table(7), [1, 2, 4])
        action = cayley_holomorph_action(spec)
        assert action.order() == 21
        g = cayley_digraph(spec)
        assert is_s_arc_transitive(g, action, 1)

    def test_holomorph_c5(self):
        spec = cayley_spec(cyclic_table(5), [1])
        assert cayley_holomorph_action(spec).order() == 5

    def test_conjugation_transitive_on_conn_iff_arc_transitive(self):
        from digsym.verify import connection_sets

        specs = [
            cayley_spec(cyclic_table(7), [1, 2, 4]),
            cayley_spec(cyclic_table(5), [1]),
            cayley_spec(cyclic_table(6), [1, 2]),
            cayley_spec(cyclic_table(11), [1, 3, 9, 5, 4]),
        ]
        for n in range(4, 9):
            table = cyclic_table(n)
            specs.extend(
                cayley_spec(table, conn) for conn in connection_sets(table, 1, 5)
            )
        for spec in specs:
            g = cayley_digraph(spec)
            action = cayley_holomorph_action(spec)
            auts = aut_preserving_conn(spec)
            conn = sorted(spec.conn)
            # abelian group: conjugation is trivial, so orbit closure of the
            # connection set under the automorphisms plays that role
            orbit = {conn[0]}
            frontier = [conn[0]]
            while frontier:
                x = frontier.pop()
                for alpha in auts:
                    y = alpha(x)
                    if y in spec.conn and y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            conn_transitive = orbit == set(conn)
            assert conn_transitive == is_s_arc_transitive(g, action, 1), spec


class TestNormalCayley:
    def test_c5_normal(self):
        spec = cayley_spec(cyclic_table(5), [1])
        assert is_normal_cayley(spec, cayley_holomorph_action(spec))

    def test_paley_normal_in_holomorph(self):
        spec = cayley_spec(cyclic_table(7), [1, 2, 4])
        assert is_normal_cayley(spec, cayley_holomorph_action(spec))

    def test_paley_normal_in_full_aut(self):
        spec = cayley_spec(cyclic_table(7), [1, 2, 4])
        g = cayley_digraph(spec)
        assert is_normal_cayley(spec, automorphism_group(g))

    def test_translations_must_lie_inside(self):
        spec = cayley_spec(cyclic_table(5), [1])
        with pytest.raises(TranslationNotInG):
            is_normal_cayley(spec, PermGroup((), degree=5))


class TestQuotient:
    def test_c6_mod_rot3(self):
        g = circuit(6)
        group = automorphism_group(g)
        normal = PermGroup([parse_cycles("(0 3)(1 4)(2 5)", 6)])
        result = quotient_digraph(g, group=group, normal=normal)
        assert result.quotient.arcs == circuit(3).arcs
        assert result.image_group.order() == 3
        assert not result.internal_arcs
        assert result.block_map == (0, 1, 2, 0, 1, 2)

    def test_c4_mod_rot2_undirected(self):
        g = circuit(4)
        group = automorphism_group(g)
        normal = PermGroup([parse_cycles("(0 2)(1 3)", 4)])
        result = quotient_digraph(g, group=group, normal=normal)
        assert result.num_blocks == 2
        assert result.quotient.symmetry_class == UNDIRECTED

    def test_singleton_partition_copies(self):
        g = paley_tournament(7)
        result = quotient_digraph(g, partition=[(i,) for i in range(7)])
        assert result.quotient.arcs == g.arcs
        assert result.image_group is None

    def test_internal_arcs_flagged(self):
        g = build(4, [(0, 1), (2, 3), (0, 2)])
        result = quotient_digraph(g, partition=[(0, 1), (2, 3)])
        assert result.internal_arcs
        assert result.quotient.arcs == frozenset({(0, 1)})

    def test_non_normal_rejected(self):
        g = complete(4).underlying_undirected()
        group = automorphism_group(complete(4))
        transposition = PermGroup([parse_cycles("(0 1)", 4)])
        with pytest.raises(NotNormal):
            quotient_digraph(complete(4), group=group, normal=transposition)

    def test_bad_partition(self):
        with pytest.raises(PartitionInvalid):
            quotient_digraph(circuit(4), partition=[(0, 1), (1, 2, 3)])

    def test_quotient_of_connected_is_connected(self):
        for n, d in ((6, 3), (8, 4), (12, 4), (12, 3)):
            g = circuit(n)
            group = automorphism_group(g)
            rot = parse_cycles(
                "".join("(" + " ".join(str((i + j * d) % n) for j in range(n // d)) + ")"
                        for i in range(d)),
                n,
            )
            result = quotient_digraph(g, group=group, normal=PermGroup([rot]))
            assert result.quotient.is_strongly_connected()
