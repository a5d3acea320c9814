import random

import pytest

from config.settings import Settings
from domain.decomposition_models import NestedDecomposition, RootedTreeDecomposition
from domain.exceptions import CapacityError, ContractViolationError
from domain.results import CmpResult
from engine.graph_core import components
from engine.nested import invariant_nested_decomposition
from engine.ordering import (
    DecompositionOrdering,
    cmp_dec,
    cmp_seq,
    cmp_sequences,
    cmp_sets,
    cmp_tuples,
    pi,
    seq_key,
)
from harness.gadgets import edge_star_gadget
from harness.generators import random_partial_ktree, random_permutation
from harness.oracles import brute_force_isomorphic, brute_force_isomorphic_respecting
from tests.conftest import make_graph

LESS, GREATER, INCOMPARABLE = CmpResult.LESS, CmpResult.GREATER, CmpResult.INCOMPARABLE


def by_value(a, b):
    return CmpResult.of(a, b)


def connected_sample(seed: int, n: int = 7, k: int = 2, keep: float = 0.8):
    graph = random_partial_ktree(n, k, keep, seed)
    return graph.induced_subgraph(max(components(graph), key=len))


@pytest.fixture
def leaf_without_family(path3):
    base = RootedTreeDecomposition(
        nodes=("r", "a"),
        parent={"a": "r"},
        bags={"r": frozenset({2, 3}), "a": frozenset({1, 2})},
        root="r",
    )
    families = {"r": (RootedTreeDecomposition.single_bag({2, 3}),)}
    return NestedDecomposition(graph=path3, base=base, families=families)


class TestCmpResult:
    def test_flip(self):
        assert LESS.flip() is GREATER
        assert GREATER.flip() is LESS
        assert INCOMPARABLE.flip() is INCOMPARABLE

    def test_of(self):
        assert CmpResult.of((1, 2), (1, 3)) is LESS
        assert CmpResult.of("b", "a") is GREATER
        assert CmpResult.of(4, 4) is INCOMPARABLE


class TestSequenceOrdering:
    def test_shorter_first(self, k2):
        assert cmp_seq(k2, (1,), k2, (1, 2)) is LESS

    def test_non_edge_before_edge(self, k2, two_isolated):
        assert cmp_seq(k2, (1, 2), two_isolated, (1, 2)) is GREATER

    def test_symmetric_sequences(self, k2):
        assert cmp_seq(k2, (1, 2), k2, (2, 1)) is INCOMPARABLE

    def test_path_ends(self, path3):
        assert cmp_seq(path3, (1, 3), path3, (1, 2)) is LESS
        assert cmp_seq(path3, (1, 3), path3, (3, 1)) is INCOMPARABLE

    def test_colors(self):
        blue = make_graph(2, [(1, 2)], colors={(1, 2): 3})
        red = make_graph(2, [(1, 2)], colors={(1, 2): 4})
        assert cmp_seq(blue, (1, 2), red, (2, 1)) is LESS

    def test_marks(self, k2):
        assert seq_key(k2, (1, 2), frozenset({(1, 2)})) == (2, (-1, -2, -2, -1))


class TestComposedOrderings:
    def test_sequences(self):
        assert cmp_sequences([1, 2], [1, 3], by_value) is LESS
        assert cmp_sequences([5], [1, 1], by_value) is LESS
        assert cmp_sequences([2, 2], [2, 2], by_value) is INCOMPARABLE

    def test_tuples(self):
        comparators = [by_value, lambda a, b: CmpResult.of(len(a), len(b))]
        assert cmp_tuples((1, "ab"), (1, "a"), comparators) is GREATER
        assert cmp_tuples((0, "zz"), (1, "a"), comparators) is LESS
        assert cmp_tuples((1, "ab"), (1, "cd"), comparators) is INCOMPARABLE

    def test_sets(self):
        assert cmp_sets([1, 2], [1, 3], by_value) is LESS
        assert cmp_sets([3, 1], [1, 3], by_value) is INCOMPARABLE
        assert cmp_sets([9], [1, 1], by_value) is LESS
        assert cmp_sets([2, 2], [1, 3], by_value) is GREATER

    def test_sets_with_coarse_comparator(self):
        parity = lambda a, b: CmpResult.of(a % 2, b % 2)  # noqa: E731
        assert cmp_sets([2, 3], [4, 5], parity) is INCOMPARABLE
        assert cmp_sets([2, 4], [1, 6], parity) is LESS

    @pytest.mark.parametrize("seed", range(10))
    def test_sets_ignore_input_order(self, seed):
        rng = random.Random(seed)
        by_tens = lambda a, b: CmpResult.of(a // 10, b // 10)  # noqa: E731
        left = [rng.randrange(50) for _ in range(6)]
        right = [rng.randrange(50) for _ in range(6)]
        expected = cmp_sets(left, right, by_tens)
        for _ in range(5):
            rng.shuffle(left)
            rng.shuffle(right)
            assert cmp_sets(left, right, by_tens) is expected

    def test_sets_reject_non_weak_orderings(self):
        def broken(a, b):
            if (a, b) == (1, 2):
                return LESS
            if (a, b) == (2, 1):
                return GREATER
            return INCOMPARABLE

        with pytest.raises(ContractViolationError):
            cmp_sets([1, 2], [3], broken)


class TestPi:
    def test_child_with_family(self, path3):
        nested = invariant_nested_decomposition(path3, 1)
        for child in nested.base.children(nested.root):
            assert pi(nested, nested.root, child) == [(2,)]

    def test_child_without_family(self, leaf_without_family):
        assert pi(leaf_without_family, "r", "a") == [(1, 2), (2, 1)]

    def test_not_a_child(self, leaf_without_family):
        with pytest.raises(ContractViolationError):
            pi(leaf_without_family, "a", "r")

    def test_capacity(self, leaf_without_family):
        with pytest.raises(CapacityError):
            pi(leaf_without_family, "r", "a", Settings(permutation_cap=1))


class TestCmpDec:
    def test_edge_is_symmetric(self, k2):
        nested = invariant_nested_decomposition(k2, 1)
        assert cmp_dec(k2, nested, (1, 2), k2, nested, (2, 1)) is INCOMPARABLE

    def test_size_decides_first(self, path3, c5):
        small = invariant_nested_decomposition(path3, 2)
        large = invariant_nested_decomposition(c5, 2)
        assert small.size != large.size
        expected = CmpResult.of(small.size, large.size)
        assert cmp_dec(path3, small, (), c5, large, ()) is expected
        assert cmp_dec(c5, large, (), path3, small, ()) is expected.flip()

    @pytest.mark.parametrize("seed", range(6))
    def test_invariant_under_relabeling(self, seed):
        graph = connected_sample(seed)
        permuted, _ = random_permutation(graph, seed + 3)
        first = invariant_nested_decomposition(graph, 2)
        second = invariant_nested_decomposition(permuted, 2)
        assert cmp_dec(first.graph, first, (), second.graph, second, ()) is INCOMPARABLE

    @pytest.mark.parametrize("seed", range(6))
    def test_certificates_agree_with_cases(self, seed):
        ordering = DecompositionOrdering()
        frames = []
        for offset in range(3):
            nested = invariant_nested_decomposition(connected_sample(seed * 3 + offset, n=6), 2)
            frames.append(ordering.frame(nested.graph, nested))
        for a in frames:
            for b in frames:
                assert ordering.compare(a, (), b, ()) is ordering.cmp_dec(a, (), b, ())

    @pytest.mark.parametrize("seed", range(24))
    def test_incomparable_means_isomorphic(self, seed):
        graph = connected_sample(seed, n=6)
        other = connected_sample(seed + 50, n=6)
        first = invariant_nested_decomposition(graph, 2)
        second = invariant_nested_decomposition(other, 2)
        verdict = cmp_dec(first.graph, first, (), second.graph, second, ())
        witness = brute_force_isomorphic_respecting(first.graph, (), second.graph, ())
        assert (verdict is INCOMPARABLE) == (witness is not None)

    @pytest.mark.parametrize("seed", range(6))
    def test_transitive_on_triples(self, seed):
        nested = [invariant_nested_decomposition(connected_sample(seed * 3 + i, n=6), 2) for i in range(3)]
        verdict = {
            (a, b): cmp_dec(nested[a].graph, nested[a], (), nested[b].graph, nested[b], ())
            for a in range(3)
            for b in range(3)
        }
        for a in range(3):
            for b in range(3):
                assert verdict[(a, b)] is verdict[(b, a)].flip()
                for c in range(3):
                    if verdict[(a, b)] is not GREATER and verdict[(b, c)] is not GREATER:
                        expected = LESS if LESS in (verdict[(a, b)], verdict[(b, c)]) else INCOMPARABLE
                        assert verdict[(a, c)] is expected

    def test_isomorphic_frames_share_a_certificate(self, c6):
        ordering = DecompositionOrdering()
        permuted, _ = random_permutation(c6, 2)
        first = invariant_nested_decomposition(c6, 2)
        second = invariant_nested_decomposition(permuted, 2)
        a = ordering.certificate(ordering.frame(first.graph, first), ())
        b = ordering.certificate(ordering.frame(second.graph, second), ())
        assert a is b

    def test_memo_is_filled(self, c5):
        ordering = DecompositionOrdering()
        nested = invariant_nested_decomposition(c5, 2)
        frame = ordering.frame(nested.graph, nested)
        ordering.certificate(frame, ())
        assert ordering.memo_size() > 0


class TestEdgeStarGadget:
    def test_shape(self, c4):
        edgeless, nested = edge_star_gadget(c4)
        assert edgeless.edge_colors == {}
        assert len(nested.family(nested.root)) == 4
        assert {member.anchor for member in nested.family(nested.root)} == set(c4.edges)

    def test_edgeless_input(self, two_isolated):
        _, nested = edge_star_gadget(two_isolated)
        assert nested.families == {}

    def test_non_isomorphic_graphs_are_incomparable(self):
        path = make_graph(4, [(1, 2), (2, 3), (3, 4)])
        star = make_graph(4, [(1, 4), (2, 4), (3, 4)])
        assert brute_force_isomorphic(path, star) is None
        first_graph, first = edge_star_gadget(path)
        second_graph, second = edge_star_gadget(star)
        assert cmp_dec(first_graph, first, (), second_graph, second, ()) is INCOMPARABLE
        # the gadget graphs themselves are isomorphic
        assert brute_force_isomorphic(first_graph, second_graph) is not None

    def test_edge_count_is_visible(self, path3, k3):
        first_graph, first = edge_star_gadget(path3)
        second_graph, second = edge_star_gadget(k3)
        assert cmp_dec(first_graph, first, (), second_graph, second, ()) is not INCOMPARABLE
