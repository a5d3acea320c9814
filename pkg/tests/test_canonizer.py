import pytest

from domain.exceptions import ContractViolationError, DomainError
from domain.results import CanonResult
from engine.canonizer import (
    canon,
    canon_graph,
    canonical_sequence,
    color_matrix,
    isomorphic,
    isomorphic_by_ordering,
    match_canons,
    nested_canonical_sequence,
    reserve_colors,
)
from engine.graph_core import components
from engine.nested import invariant_nested_decomposition
from harness.generators import cycle, disjoint_union, path, random_partial_ktree, random_permutation
from harness.oracles import brute_force_isomorphic
from tests.conftest import make_graph


class TestReserveColors:
    def test_plain_graph_untouched(self, c4):
        assert reserve_colors(c4) is c4

    def test_user_colors_shifted(self):
        graph = make_graph(3, [(1, 2), (2, 3)], colors={(2, 3): 2})
        shifted = reserve_colors(graph)
        assert shifted.color(1, 2) == 1
        assert shifted.color(2, 3) == 3


class TestCanon:
    def test_single_vertex(self):
        result = canon(make_graph(1), 0)
        assert result.matrix == ((-1,),)
        assert result.labeling == {1: 0}

    def test_edge(self, k2):
        assert canon(k2, 1).matrix == ((-1, 1), (1, -1))

    def test_labeling_is_a_bijection(self, c6):
        result = canon(c6, 2)
        assert sorted(result.labeling) == list(c6.vertices)
        assert sorted(result.labeling.values()) == list(range(6))
        assert all(result.order[i] == v for v, i in result.labeling.items())

    def test_matrix_matches_labeling(self, c5):
        result = canon(c5, 2)
        assert result.matrix == color_matrix(c5, result.order)

    def test_relabeled_cycle(self, c5):
        relabeled = c5.relabel({1: 4, 2: 1, 3: 5, 4: 2, 5: 3})
        assert canon(c5, 2).same_canon(canon(relabeled, 2))

    def test_canon_graph_is_isomorphic(self, c6):
        result = canon(c6, 2)
        rebuilt = canon_graph(result)
        assert rebuilt.vertices == tuple(range(6))
        assert brute_force_isomorphic(c6, rebuilt) is not None

    def test_fixed_point(self, c6):
        result = canon(c6, 2)
        assert canon(canon_graph(result), 2).same_canon(result)

    def test_keeps_input_colors(self):
        graph = make_graph(3, [(1, 2), (2, 3)], colors={(1, 2): 5})
        result = canon(graph, 1)
        assert sorted(c for row in result.matrix for c in row if c > 0) == [1, 1, 5, 5]

    def test_colors_separate_graphs(self):
        first = make_graph(3, [(1, 2), (2, 3)], colors={(1, 2): 2})
        second = make_graph(3, [(1, 2), (2, 3)], colors={(1, 2): 3})
        assert not canon(first, 1).same_canon(canon(second, 1))

    def test_user_color_two_is_not_an_improvement_edge(self):
        # K_{2,3} gains an improvement edge at k = 2; a user edge of color 2 must stay distinguishable
        hubs = [(h, v) for h in (1, 2) for v in (3, 4, 5)]
        plain = make_graph(5, hubs)
        with_edge = make_graph(5, hubs + [(1, 2)], colors={(1, 2): 2})
        assert not canon(plain, 2).same_canon(canon(with_edge, 2))

    def test_disconnected_components_sorted(self):
        graph = disjoint_union(cycle(4), path(2), path(1))
        result = canon(graph, 2)
        assert result.order[0] == 6
        assert set(result.order[1:3]) == {4, 5}
        assert set(result.order[3:]) == {0, 1, 2, 3}

    def test_width_promise(self, c5):
        with pytest.raises(ContractViolationError):
            canon(c5, 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_invariant_under_relabeling(self, seed):
        graph = random_partial_ktree(9, 2, 0.7, seed)
        permuted, _ = random_permutation(graph, seed + 1000)
        assert canon(graph, 2).same_canon(canon(permuted, 2))

    @pytest.mark.parametrize("seed", range(10))
    def test_distinguishes_non_isomorphic(self, seed):
        graph = random_partial_ktree(8, 2, 0.7, seed)
        other = random_partial_ktree(8, 2, 0.7, seed + 500)
        expected = brute_force_isomorphic(graph, other) is not None
        assert canon(graph, 2).same_canon(canon(other, 2)) == expected


class TestCanonicalSequence:
    def test_enumerates_vertices(self, c6):
        assert sorted(canonical_sequence(c6, 2)) == list(c6.vertices)

    def test_disconnected_rejected(self, two_isolated):
        with pytest.raises(ContractViolationError):
            canonical_sequence(two_isolated, 1)


class TestIsomorphism:
    def test_cycle_against_two_triangles(self, c6):
        triangles = disjoint_union(cycle(3), cycle(3))
        assert not isomorphic(c6, triangles, 2).isomorphic
        assert not isomorphic_by_ordering(c6, triangles, 2)

    def test_counts_short_circuit(self, c4, c5):
        assert isomorphic(c4, c5, 2) == isomorphic(c5, c4, 2)
        assert not isomorphic(c4, c5, 2).isomorphic

    def test_witness_is_an_isomorphism(self, c6):
        relabeled, _ = random_permutation(c6, 3)
        verdict = isomorphic(c6, relabeled, 2)
        assert verdict.isomorphic
        for u, v in c6.edges:
            assert relabeled.has_edge(verdict.witness[u], verdict.witness[v])

    def test_match_canons_rejects_different_canons(self, c6, k3):
        assert not match_canons(c6, k3, canon(c6, 2), canon(k3, 2)).isomorphic

    def test_match_canons_checks_the_witness(self, c4):
        genuine = canon(c4, 2)
        path4 = make_graph(4, [(1, 2), (2, 3), (3, 4)])
        bogus = CanonResult(order=genuine.order, labeling=genuine.labeling, matrix=genuine.matrix)
        with pytest.raises(ContractViolationError):
            match_canons(c4, path4, genuine, bogus)

    @pytest.mark.parametrize("seed", range(8))
    def test_ordering_agrees_with_canons(self, seed):
        graph = random_partial_ktree(7, 2, 0.75, seed)
        other = random_permutation(graph, seed)[0] if seed % 2 else random_partial_ktree(7, 2, 0.75, seed + 77)
        assert isomorphic_by_ordering(graph, other, 2) == isomorphic(graph, other, 2).isomorphic


class TestPrecomputedNested:
    def test_sequence_from_nested(self, c6):
        nested = invariant_nested_decomposition(c6, 2)
        assert nested_canonical_sequence(nested) == canonical_sequence(c6, 2)

    def test_canon_from_nested(self):
        graph = disjoint_union(cycle(5), path(3))
        nested = [invariant_nested_decomposition(graph.induced_subgraph(part), 2) for part in components(graph)]
        assert canon(graph, 2, nested=nested) == canon(graph, 2)

    def test_one_per_component(self, c5):
        with pytest.raises(DomainError):
            canon(c5, 2, nested=[])

    def test_components_must_match(self, c5, c6):
        with pytest.raises(DomainError):
            canon(c6, 2, nested=[invariant_nested_decomposition(c5, 2)])
