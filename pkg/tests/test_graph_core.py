import pytest

from domain.exceptions import DomainError
from domain.graph_models import INFINITY, ColoredGraph
from engine.graph_core import (
    color,
    components,
    connectivity,
    connectivity_sets,
    is_clique,
    leftmost_min_separator,
    leftmost_separation,
)
from harness.generators import random_partial_ktree, random_permutation
from harness.oracles import brute_force_connectivity
from tests.conftest import make_graph


class TestColor:
    def test_diagonal(self, k2):
        assert color(k2, 1, 1) == -1

    def test_edge(self, k2):
        assert color(k2, 1, 2) == 1

    def test_non_edge(self, two_isolated):
        assert color(two_isolated, 1, 2) == 0

    def test_custom_color(self):
        graph = make_graph(2, [(1, 2)], colors={(2, 1): 5})
        assert color(graph, 2, 1) == 5

    def test_unknown_vertex(self, k2):
        with pytest.raises(DomainError):
            color(k2, 1, 9)


class TestComponents:
    def test_path_without_middle(self, path3):
        assert components(path3, {2}) == [(1,), (3,)]

    def test_connected_cycle(self, c4):
        assert components(c4) == [(1, 2, 3, 4)]

    def test_cycle_cut_twice(self, c4):
        assert components(c4, {2, 4}) == [(1,), (3,)]

    @pytest.mark.parametrize("seed", range(10))
    def test_partition(self, seed):
        graph = random_partial_ktree(9, 2, 0.5, seed)
        removed = set(graph.vertices[:2])
        parts = components(graph, removed)
        covered = [v for part in parts for v in part]
        assert sorted(covered) == sorted(set(graph.vertices) - removed)
        label = {v: i for i, part in enumerate(parts) for v in part}
        for u, v in graph.edges:
            if u in label and v in label:
                assert label[u] == label[v]


class TestConnectivity:
    def test_adjacent_is_infinite(self, k2):
        assert connectivity(k2, 1, 2) == INFINITY

    def test_cycle(self, c4):
        assert connectivity(c4, 1, 3) == 2

    def test_isolated(self, two_isolated):
        assert connectivity(two_isolated, 1, 2) == 0

    def test_same_vertex_rejected(self, c4):
        with pytest.raises(DomainError):
            connectivity(c4, 1, 1)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_brute_force(self, seed):
        graph = random_partial_ktree(8, 2, 0.7, seed)
        for u, v in graph.non_edges():
            assert connectivity(graph, u, v) == brute_force_connectivity(graph, u, v)


class TestConnectivitySets:
    def test_cycle(self, c4):
        assert connectivity_sets(c4, {1}, {3}) == 2

    def test_same_singleton(self, c4):
        assert connectivity_sets(c4, {2}, {2}) == 1

    def test_path(self, path3):
        assert connectivity_sets(path3, {1}, {3}) == 1

    def test_empty_set_rejected(self, c4):
        with pytest.raises(DomainError):
            connectivity_sets(c4, set(), {1})


class TestLeftmostSeparator:
    def test_cycle(self, c4):
        assert leftmost_min_separator(c4, {1}, {3}) == {2, 4}

    def test_path(self, path3):
        assert leftmost_min_separator(path3, {1}, {3}) == {2}

    def test_adjacent_endpoints_cut_the_source(self, k2):
        assert leftmost_min_separator(k2, {1}, {2}) == {1}

    def test_prefers_the_side_of_x(self):
        # 1 - 2 - 3 - 4: both {2} and {3} are minimum, {2} is leftmost
        graph = make_graph(4, [(1, 2), (2, 3), (3, 4)])
        assert leftmost_min_separator(graph, {1}, {4}) == {2}
        assert leftmost_min_separator(graph, {4}, {1}) == {3}

    def test_sides_on_a_path(self):
        graph = make_graph(4, [(1, 2), (2, 3), (3, 4)])
        separation = leftmost_separation(graph, {1}, {4})
        assert separation.a_side == {1, 2}
        assert separation.b_side == {2, 3, 4}

    def test_shared_vertex_is_cut(self, path3):
        separation = leftmost_separation(path3, {1, 2}, {2, 3})
        assert separation.separator == {2}
        assert separation.a_side == {1, 2}

    @pytest.mark.parametrize("seed", range(8))
    def test_is_a_minimum_separation(self, seed):
        graph = random_partial_ktree(8, 2, 0.8, seed)
        for u, v in graph.non_edges():
            separation = leftmost_separation(graph, {u}, {v})
            assert separation.is_valid_for(graph)
            assert u in separation.a_side and v in separation.b_side - separation.a_side
            assert len(separation.separator) == connectivity(graph, u, v)

    @pytest.mark.parametrize("seed", range(6))
    def test_permutation_equivariant(self, seed):
        graph = random_partial_ktree(8, 2, 0.8, seed)
        permuted, pi = random_permutation(graph, seed + 100)
        for u, v in graph.non_edges():
            expected = frozenset(pi[w] for w in leftmost_min_separator(graph, {u}, {v}))
            assert leftmost_min_separator(permuted, {pi[u]}, {pi[v]}) == expected


class TestIsClique:
    def test_empty_set(self, c4):
        assert is_clique(c4, set())

    def test_triangle(self, k3):
        assert is_clique(k3, {1, 2, 3})

    def test_cycle_diagonal(self, c4):
        assert not is_clique(c4, {1, 3})


class TestColoredGraph:
    def test_relabel_moves_colors(self):
        graph = make_graph(3, [(1, 2), (2, 3)], colors={(2, 3): 4})
        moved = graph.relabel({1: 3, 2: 1, 3: 2})
        assert moved.color(3, 1) == 1
        assert moved.color(1, 2) == 4

    def test_relabel_requires_bijection(self, path3):
        with pytest.raises(DomainError):
            path3.relabel({1: 1, 2: 1, 3: 2})

    def test_induced_subgraph_keeps_input_order(self):
        graph = ColoredGraph.from_edges((5, 3, 9), [(5, 9)])
        sub = graph.induced_subgraph({9, 5})
        assert sub.vertices == (5, 9)
        assert sub.vertex_index(9) == 1
