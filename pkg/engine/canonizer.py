"""Canonical sequences, canons, canonical labelings and isomorphism tests."""
import logging
from collections.abc import Sequence
from itertools import permutations

from config.settings import Settings
from domain.decomposition_models import NestedDecomposition
from domain.exceptions import ContractViolationError, DomainError
from domain.graph_models import IMPROVEMENT_COLOR, ColoredGraph
from domain.results import CanonResult, CmpResult, IsomorphismResult
from engine.graph_core import components
from engine.nested import invariant_nested_decomposition
from engine.ordering import DecompositionOrdering, Frame

logger = logging.getLogger(__name__)


def reserve_colors(graph: ColoredGraph) -> ColoredGraph:
    """Shift user colors ≥ 2 up by one so that color 2 stays free for improvement edges."""
    shift = {c: c + 1 for c in set(graph.edge_colors.values()) if c >= IMPROVEMENT_COLOR}
    return graph.recolored(shift) if shift else graph


class _SequenceBuilder:
    """Walks a nested decomposition and emits the canonical vertex sequence."""

    def __init__(self, graph: ColoredGraph, ordering: DecompositionOrdering):
        self.graph = graph
        self.ordering = ordering

    def _positions(self, vertices: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.graph.vertex_index(v) for v in vertices)

    def sequence(self, frame: Frame, sigma: tuple[int, ...]) -> list[int]:
        if frame.family:
            return self._refined_sequence(frame, sigma)
        if frame.size == 1:
            return list(sigma)

        covered = set(sigma)
        entries = []
        for child, orderings in self.ordering.children(frame):
            if frame.nested.subtree_vertices(child.node) <= covered:
                continue
            ranked = sorted(
                (self.ordering.option_key(child, tau, frame, sigma), self._positions(tau), tau) for tau in orderings
            )
            set_key = self.ordering.child_set_key(child, orderings, frame, sigma)
            first = min(self._positions(frame.nested.subtree_vertices(child.node)))
            entries.append((set_key, first, child, ranked[0][2]))
        entries.sort(key=lambda e: (e[0], e[1]))

        out = list(sigma)
        for _, _, child, tau in entries:
            out.extend(self.sequence(child, tau))
        return list(dict.fromkeys(out))

    def _refined_sequence(self, frame: Frame, sigma: tuple[int, ...]) -> list[int]:
        options = []
        for tag, (member, refined) in enumerate(zip(frame.family, self.ordering.refinements(frame, sigma))):
            anchor = self._positions(member.anchor) if member.anchor is not None else ()
            options.append((self.ordering.certificate(refined, sigma), sorted(anchor), tag, refined))
        best = min(options, key=lambda o: o[:3])
        return self.sequence(best[3], sigma)


def nested_canonical_sequence(nested: NestedDecomposition, settings: Settings | None = None) -> list[int]:
    """
    The canonical ordering read off an invariant nested decomposition of a
    connected graph whose colors have been reserved.

    Raises:
        CapacityError: If a root-set enumeration exceeds the permutation cap.
    """
    ordering = DecompositionOrdering(settings, mark_refinements=True)
    frame = ordering.frame(nested.graph, nested)
    order = _SequenceBuilder(nested.graph, ordering).sequence(frame, ())
    logger.debug("canonical sequence of %d vertices, memo size %d", len(order), ordering.memo_size())
    if sorted(order) != sorted(nested.graph.vertices):
        raise ContractViolationError("canonical_sequence", "sequence does not enumerate the vertices")
    return order


def canonical_sequence(graph: ColoredGraph, k: int, settings: Settings | None = None) -> list[int]:
    """
    The canonical ordering of a connected graph of treewidth at most k.

    Raises:
        ContractViolationError: If the graph is disconnected or tw(G) > k.
        CapacityError: If a root-set enumeration exceeds the permutation cap.
    """
    settings = settings or Settings()
    nested = invariant_nested_decomposition(reserve_colors(graph), k, settings)
    return nested_canonical_sequence(nested, settings)


def color_matrix(graph: ColoredGraph, order: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(graph.color(a, b) for b in order) for a in order)


def canon(
    graph: ColoredGraph,
    k: int,
    settings: Settings | None = None,
    nested: Sequence[NestedDecomposition] | None = None,
) -> CanonResult:
    """
    Canon and canonical labeling: components are canonized separately and
    concatenated in order of (size, encoding). The matrix uses the input colors.

    `nested` may supply the invariant nested decompositions of the
    color-reserved components, aligned with `components(graph)`.
    """
    settings = settings or Settings()
    split = components(graph)
    if nested is not None and len(nested) != len(split):
        raise DomainError("canon", f"{len(nested)} nested decompositions for {len(split)} components")
    parts = []
    for i, part in enumerate(split):
        sub = graph.induced_subgraph(part)
        if nested is None:
            order = canonical_sequence(sub, k, settings)
        elif set(nested[i].graph.vertices) != set(part):
            raise DomainError("canon", "nested decomposition does not cover its component", component=i)
        else:
            order = nested_canonical_sequence(nested[i], settings)
        encoding = tuple(c for row in color_matrix(sub, order) for c in row)
        parts.append((len(order), encoding, min(graph.vertex_index(v) for v in part), order))
    parts.sort(key=lambda p: p[:3])

    order = tuple(v for *_, piece in parts for v in piece)
    return CanonResult(
        order=order,
        labeling={v: i for i, v in enumerate(order)},
        matrix=color_matrix(graph, order),
    )


def canon_graph(result: CanonResult) -> ColoredGraph:
    return result.canon_graph()


def _verify_witness(graph: ColoredGraph, other: ColoredGraph, witness: dict[int, int]) -> None:
    for u in graph.vertices:
        for v in graph.vertices:
            if graph.color(u, v) != other.color(witness[u], witness[v]):
                raise ContractViolationError("isomorphic", f"witness breaks the colors of {(u, v)}")


def match_canons(graph: ColoredGraph, other: ColoredGraph, first: CanonResult, second: CanonResult) -> IsomorphismResult:
    """The verdict for two canonized graphs; the witness composes the two labelings."""
    if not first.same_canon(second):
        return IsomorphismResult(isomorphic=False)
    witness = {v: second.order[first.labeling[v]] for v in graph.vertices}
    _verify_witness(graph, other, witness)
    return IsomorphismResult(isomorphic=True, witness=witness)


def isomorphic(graph: ColoredGraph, other: ColoredGraph, k: int, settings: Settings | None = None) -> IsomorphismResult:
    """Decide isomorphism by comparing canons; a positive answer carries a verified witness."""
    if graph.order != other.order or len(graph.edge_colors) != len(other.edge_colors):
        return IsomorphismResult(isomorphic=False)
    return match_canons(graph, other, canon(graph, k, settings), canon(other, k, settings))


def isomorphic_by_ordering(graph: ColoredGraph, other: ColoredGraph, k: int, settings: Settings | None = None) -> bool:
    """
    Decide isomorphism with the ordering alone: components are matched by
    incomparability of their nested decompositions under some ordered root sets.
    """
    settings = settings or Settings()
    ours, theirs = components(graph), components(other)
    if sorted(map(len, ours)) != sorted(map(len, theirs)):
        return False
    ordering = DecompositionOrdering(settings)

    def prepared(host: ColoredGraph, part) -> tuple[Frame, list[tuple[int, ...]]]:
        nested = invariant_nested_decomposition(reserve_colors(host.induced_subgraph(part)), k, settings)
        frame = ordering.frame(nested.graph, nested)
        root_bag = nested.base.bags[nested.root]
        roots = [()] if nested.family(nested.root) else list(permutations(sorted(root_bag)))
        return frame, roots

    left = [prepared(graph, part) for part in ours]
    right = [prepared(other, part) for part in theirs]
    unmatched = list(range(len(right)))
    for frame, roots in left:
        sigma = roots[0]
        match = next(
            (
                j
                for j in unmatched
                if any(
                    ordering.compare(frame, sigma, right[j][0], tau) is CmpResult.INCOMPARABLE
                    for tau in right[j][1]
                )
            ),
            None,
        )
        if match is None:
            return False
        unmatched.remove(match)
    return True
