import pytest

from domain.decomposition_models import GraphWithInterface
from domain.exceptions import ContractViolationError, DomainError
from engine.atom_decomp import (
    atom_bounded_decomposition,
    descriptor_decomposition,
    descriptor_to_treedec,
    sep_s,
    split_at,
)
from engine.treedec import validate
from tests.conftest import make_cycle, make_graph


class TestSepS:
    def test_small_interface_on_cycle(self, c4):
        gi = GraphWithInterface(graph=c4, interface=frozenset({1, 3}))
        assert sep_s(gi, 4, 2) == {1, 2, 3, 4}

    def test_well_connected_interface_is_kept(self, c4):
        gi = GraphWithInterface(graph=c4, interface=frozenset({1, 3}))
        assert sep_s(gi, 4, 1) == {1, 3}

    def test_both_directions_on_path(self):
        path = make_graph(4, [(1, 2), (2, 3), (3, 4)])
        gi = GraphWithInterface.checked(path, {1, 4}, "test")
        assert sep_s(gi, 4, 2) == {1, 2, 3, 4}

    def test_large_interface_uses_set_separators(self):
        star = make_graph(5, [(v, 5) for v in range(1, 5)])
        gi = GraphWithInterface.checked(star, {1, 2, 3, 4}, "test")
        assert sep_s(gi, 1, 1) == {1, 2, 3, 4, 5}
        assert sep_s(gi, 1, 0) == {1, 2, 3, 4}


class TestSplitAt:
    def test_cycle_splits_in_two(self, c6):
        pieces = split_at(GraphWithInterface.checked(c6, (), "test"), {1, 4})
        assert [piece.key for piece in pieces] == [((2, 3), (1, 4)), ((5, 6), (1, 4))]
        assert all(piece.graph.order == 4 for piece in pieces)

    def test_separator_must_hold_interface(self, path3):
        gi = GraphWithInterface.checked(path3, {1}, "test")
        with pytest.raises(DomainError):
            split_at(gi, {2})

    def test_whole_graph_separator(self, path3):
        assert split_at(GraphWithInterface.checked(path3, (), "test"), {1, 2, 3}) == []


class TestGraphWithInterface:
    def test_disconnected_interior(self, c4):
        with pytest.raises(ContractViolationError):
            GraphWithInterface.checked(c4, {1, 3}, "test")

    def test_interface_must_be_neighborhood(self, path3):
        # interior {3} only sees 2
        with pytest.raises(ContractViolationError) as info:
            GraphWithInterface.checked(path3, {1, 2}, "test")
        assert "neighborhood" in info.value.message

    def test_interface_at_the_end_of_a_path(self, path3):
        gi = GraphWithInterface.checked(path3, {1}, "test")
        assert gi.interior == {2, 3}


class TestDescriptorDecomposition:
    def test_cycle(self, c4):
        descriptor = descriptor_decomposition(c4, (1, 3), 2)
        assert descriptor.violations() == []
        assert descriptor.children[descriptor.root] == (((2,), (1, 3)), ((4,), (1, 3)))
        assert descriptor.metadata["anchor"] == (1, 3)
        assert descriptor.metadata["max_separator"] == 3

    def test_anchor_is_normalized(self, c4):
        assert descriptor_decomposition(c4, (3, 1), 2).metadata["anchor"] == (1, 3)

    def test_to_treedec(self, c4):
        decomposition = descriptor_to_treedec(descriptor_decomposition(c4, (1, 3), 2))
        assert validate(c4, decomposition).valid
        assert decomposition.bags[decomposition.root] == {1, 3}
        assert decomposition.width == 2

    def test_edge_anchor_rejected(self, c4):
        with pytest.raises(ContractViolationError):
            descriptor_decomposition(c4, (1, 2), 2)

    def test_disconnected_rejected(self, two_isolated):
        with pytest.raises(ContractViolationError):
            descriptor_decomposition(two_isolated, (1, 2), 1)

    def test_clique_separator_rejected(self, path3):
        with pytest.raises(ContractViolationError):
            descriptor_decomposition(path3, (1, 3), 1)


class TestAtomBoundedDecomposition:
    def test_cycle4(self, c4):
        decomposition = atom_bounded_decomposition(c4, (1, 3), 2)
        assert validate(c4, decomposition).valid
        assert decomposition.anchor == (1, 3)
        assert decomposition.metadata["k_prime"] == 2
        assert decomposition.metadata["retries"] == 0

    def test_cycle6(self, c6):
        decomposition = atom_bounded_decomposition(c6, (1, 4), 2)
        assert validate(c6, decomposition).valid
        assert decomposition.bags[decomposition.root] == {1, 4}
        assert decomposition.width == 3
        assert decomposition.width <= decomposition.metadata["width_bound"]

    def test_clique_has_no_anchor(self, k3):
        with pytest.raises(ContractViolationError):
            atom_bounded_decomposition(k3, (1, 2), 2)

    @pytest.mark.parametrize("n", [5, 7, 8])
    def test_invariant_under_relabeling(self, n):
        graph = make_cycle(n)
        pi = {v: (v * 3) % n + 1 for v in graph.vertices}
        permuted = graph.relabel(pi)
        expected = atom_bounded_decomposition(graph, (1, 3), 2).relabel(pi).signature()
        assert atom_bounded_decomposition(permuted, (pi[1], pi[3]), 2).signature() == expected
