import pytest

from domain.exceptions import ContractViolationError, DomainError
from engine.atoms import (
    atom_tree,
    chordal_completion_c,
    clique_free_decomposition,
    clique_separator_index,
    is_c_inseparable,
    maximal_c_atoms,
)
from engine.graph_core import components
from engine.treedec import validate
from harness.generators import random_partial_ktree, random_permutation
from harness.oracles import brute_force_atoms, brute_force_c_inseparable, brute_force_clique_separators
from tests.conftest import make_complete, make_graph


@pytest.fixture
def diamond():
    # triangles 123 and 234 glued along 23
    return make_graph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def connected_sample(seed: int, n: int = 9, k: int = 2, keep: float = 0.75):
    graph = random_partial_ktree(n, k, keep, seed)
    largest = max(components(graph), key=len)
    return graph.induced_subgraph(largest)


class TestInseparable:
    def test_path_ends(self, path3):
        assert not is_c_inseparable(path3, 1, 3, 1)

    def test_path_ends_without_cliques(self, path3):
        assert is_c_inseparable(path3, 1, 3, 0)

    def test_adjacent(self, path3):
        assert is_c_inseparable(path3, 1, 2, 1)

    def test_cycle(self, c5):
        assert is_c_inseparable(c5, 1, 3, 2)

    def test_isolated_vertices(self, two_isolated):
        assert not is_c_inseparable(two_isolated, 1, 2, 0)

    def test_same_vertex(self, c5):
        with pytest.raises(DomainError):
            is_c_inseparable(c5, 2, 2, 1)


class TestMaximalAtoms:
    def test_path(self, path3):
        assert set(maximal_c_atoms(path3, 1).atoms) == {frozenset({1, 2}), frozenset({2, 3})}

    def test_complete(self, k4):
        assert maximal_c_atoms(k4, 3).atoms == (frozenset({1, 2, 3, 4}),)

    def test_cycle(self, c5):
        assert maximal_c_atoms(c5, 2).atoms == (frozenset({1, 2, 3, 4, 5}),)

    def test_diamond(self, diamond):
        assert set(maximal_c_atoms(diamond, 2).atoms) == {frozenset({1, 2, 3}), frozenset({2, 3, 4})}
        assert maximal_c_atoms(diamond, 1).atoms == (frozenset({1, 2, 3, 4}),)

    def test_isolated_vertices(self, two_isolated):
        assert set(maximal_c_atoms(two_isolated, 0).atoms) == {frozenset({1}), frozenset({2})}

    def test_negative_c(self, c5):
        with pytest.raises(DomainError):
            maximal_c_atoms(c5, -1)

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_subset_enumeration(self, seed):
        graph = random_partial_ktree(8, 2, 0.7, seed)
        for c in range(3):
            family = maximal_c_atoms(graph, c)
            assert set(family.atoms) == set(brute_force_atoms(graph, c))

    @pytest.mark.parametrize("seed", range(8))
    def test_family_is_well_formed(self, seed):
        graph = connected_sample(seed)
        family = maximal_c_atoms(graph, 2)
        assert family.violations(graph) == []
        for atom in family.atoms:
            assert brute_force_c_inseparable(graph, atom, 2)

    @pytest.mark.parametrize("seed", range(8))
    def test_separators_match_enumeration(self, seed):
        graph = random_partial_ktree(8, 2, 0.7, seed)
        found = {clique for clique, _ in clique_separator_index(graph, 2).separators}
        assert found == set(brute_force_clique_separators(graph, 2))


class TestChordalCompletion:
    def test_cycle_becomes_complete(self, c5):
        completed = chordal_completion_c(c5, 2)
        assert completed.is_clique(completed.vertices)
        assert len(completed.edge_colors) == 10

    def test_path_unchanged(self, path3):
        assert chordal_completion_c(path3, 1) == path3

    def test_diamond_unchanged(self, diamond):
        assert chordal_completion_c(diamond, 2) == diamond


class TestAtomTree:
    def test_path(self, path3):
        tree = atom_tree(path3, 1)
        assert tree.root == ("sep", (2,))
        assert {tree.bags[c] for c in tree.children(tree.root)} == {frozenset({1, 2}), frozenset({2, 3})}

    def test_diamond(self, diamond):
        tree = atom_tree(diamond, 2)
        assert tree.bags[tree.root] == {2, 3}
        assert validate(diamond, tree).valid

    def test_requires_smaller_separators_absent(self, path3):
        with pytest.raises(ContractViolationError):
            atom_tree(path3, 2)

    def test_positive_c(self, path3):
        with pytest.raises(DomainError):
            atom_tree(path3, 0)


class TestCliqueFreeDecomposition:
    def test_path(self, path3):
        decomposition = clique_free_decomposition(path3, 1)
        assert decomposition.bags[decomposition.root] == {2}
        assert sorted(sorted(b) for b in decomposition.bags.values()) == [[1, 2], [2], [2, 3]]

    def test_cycle_is_one_bag(self, c5):
        decomposition = clique_free_decomposition(c5, 2)
        assert decomposition.size == 1
        assert decomposition.bags[decomposition.root] == {1, 2, 3, 4, 5}

    def test_complete_is_one_bag(self):
        graph = make_complete(4)
        assert clique_free_decomposition(graph, 3).size == 1

    def test_single_vertex(self):
        decomposition = clique_free_decomposition(make_graph(1), 0)
        assert decomposition.bags[decomposition.root] == {1}

    def test_disconnected(self, two_isolated):
        with pytest.raises(ContractViolationError):
            clique_free_decomposition(two_isolated, 1)

    def test_width_promise(self, c5):
        with pytest.raises(ContractViolationError):
            clique_free_decomposition(c5, 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_valid_with_clique_adhesions(self, seed):
        graph = connected_sample(seed)
        decomposition = clique_free_decomposition(graph, 2)
        assert validate(graph, decomposition).valid
        for parent, child in decomposition.tree_edges():
            assert graph.is_clique(decomposition.adhesion(parent, child))
        for node in decomposition.nodes:
            bag = graph.induced_subgraph(decomposition.bags[node])
            assert not clique_separator_index(bag, 3).has_separator

    @pytest.mark.parametrize("seed", range(6))
    def test_isomorphism_invariant(self, seed):
        graph = connected_sample(seed)
        permuted, pi = random_permutation(graph, seed + 7)
        expected = clique_free_decomposition(graph, 2).relabel(pi).signature()
        assert clique_free_decomposition(permuted, 2).signature() == expected
