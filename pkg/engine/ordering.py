"""Weak orderings: sequences, tuples, sets and the recursive ordering of nested decompositions."""
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import total_ordering
from itertools import count, permutations
from typing import Any, TypeVar

from config.settings import Settings
from domain.decomposition_models import NestedDecomposition, NodeId
from domain.exceptions import CapacityError, ContractViolationError
from domain.graph_models import MARKER_COLOR, ColoredGraph, edge_key
from domain.results import CmpResult
from engine.nested import refine

logger = logging.getLogger(__name__)

T = TypeVar("T")
Comparator = Callable[[T, T], CmpResult]
Marks = frozenset[tuple[int, int]]


# === Composed weak orderings ===


def seq_key(graph: ColoredGraph, sequence: Sequence[int], marks: Marks = frozenset()) -> tuple[int, tuple[int, ...]]:
    """Sort key realising ≺_seq: the row-major color matrix of the sequence, shorter first."""
    colors = []
    for a in sequence:
        for b in sequence:
            if a != b and edge_key(a, b) in marks:
                colors.append(MARKER_COLOR)
            else:
                colors.append(graph.color(a, b))
    return len(sequence), tuple(colors)


def cmp_seq(graph: ColoredGraph, sigma: Sequence[int], other: ColoredGraph, other_sigma: Sequence[int]) -> CmpResult:
    return CmpResult.of(seq_key(graph, sigma), seq_key(other, other_sigma))


def cmp_sequences(left: Sequence[T], right: Sequence[T], element_cmp: Comparator) -> CmpResult:
    """Length first, then the first position where the elements are comparable."""
    if len(left) != len(right):
        return CmpResult.of(len(left), len(right))
    for a, b in zip(left, right):
        result = element_cmp(a, b)
        if result is not CmpResult.INCOMPARABLE:
            return result
    return CmpResult.INCOMPARABLE


def cmp_tuples(left: Sequence[Any], right: Sequence[Any], element_cmps: Sequence[Comparator]) -> CmpResult:
    """Component-wise comparison with one weak ordering per component."""
    for a, b, compare in zip(left, right, element_cmps):
        result = compare(a, b)
        if result is not CmpResult.INCOMPARABLE:
            return result
    return CmpResult.INCOMPARABLE


def cmp_sets(left: Sequence[T], right: Sequence[T], element_cmp: Comparator) -> CmpResult:
    """
    Compare two finite sets by their sorted element sequences.

    The comparison matrix over the union of both sets is built once; every
    element's rank is the number of elements strictly below it, and the two
    sorted rank sequences are compared like sequences.

    Raises:
        ContractViolationError: If `element_cmp` is not a weak ordering on the union.
    """
    union = list(left) + list(right)
    size = len(union)
    matrix = [[CmpResult.INCOMPARABLE] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            result = element_cmp(union[i], union[j])
            matrix[i][j] = result
            matrix[j][i] = result.flip()

    rank = [sum(1 for j in range(size) if matrix[j][i] is CmpResult.LESS) for i in range(size)]
    for i in range(size):
        for j in range(size):
            relation = matrix[i][j]
            if i == j:
                continue
            if (relation is CmpResult.INCOMPARABLE) != (rank[i] == rank[j]) or (
                relation is CmpResult.LESS and rank[i] >= rank[j]
            ):
                raise ContractViolationError("cmp_sets", "element comparison is not a weak ordering")

    ours = sorted(rank[: len(left)])
    theirs = sorted(rank[len(left):])
    if len(ours) != len(theirs):
        return CmpResult.of(len(ours), len(theirs))
    return CmpResult.of(tuple(ours), tuple(theirs))


# === Root-set enumeration ===


def _orderings(vertices: frozenset[int], cap: int) -> list[tuple[int, ...]]:
    count = math.factorial(len(vertices))
    if count > cap:
        raise CapacityError("root-set enumeration", count, cap, remedy="raise --permutation-cap")
    return list(permutations(sorted(vertices)))


def pi(
    nested: NestedDecomposition, parent: NodeId, child: NodeId, settings: Settings | None = None
) -> list[tuple[int, ...]]:
    """
    Π(c): every ordering of B_c when 𝓓_c is empty, otherwise every ordering
    of the adhesion set B_r ∩ B_c, in lexicographic order.

    Raises:
        CapacityError: If the number of orderings exceeds the permutation cap.
    """
    settings = settings or Settings()
    base = nested.base
    if base.parent.get(child) != parent:
        raise ContractViolationError("pi", f"{child!r} is not a child of {parent!r}", node=child)
    if nested.family(child):
        return _orderings(base.adhesion(child, parent), settings.permutation_cap)
    return _orderings(base.bags[child], settings.permutation_cap)


# === Ordering of nested decompositions ===


@dataclass(frozen=True, eq=False)
class Frame:
    """The subdecomposition D̄_node of a registered nested decomposition, under a set of marks."""

    token: int
    nested: NestedDecomposition
    node: NodeId
    marks: Marks = frozenset()

    def at(self, node: NodeId) -> "Frame":
        return Frame(self.token, self.nested, node, self.marks)

    @property
    def size(self) -> int:
        return self.nested.subtree_size(self.node)

    @property
    def family(self):
        return self.nested.family(self.node)

    def key(self, sigma: tuple[int, ...]) -> tuple:
        return self.token, self.marks, self.node, sigma


@total_ordering
class Certificate:
    """
    A hash-consed certificate value.

    An ordering keeps one instance per distinct value and builds every value
    from already interned parts, so equality of parts is an identity check,
    the hash is computed once, and comparing two certificates only descends
    along the first differing part.
    """

    __slots__ = ("value", "_hash")

    def __init__(self, value: tuple):
        self.value = value
        self._hash = hash(value)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Certificate):
            return NotImplemented
        return self._hash == other._hash and self.value == other.value

    def __lt__(self, other: "Certificate") -> bool:
        if self is other:
            return False
        return self.value < other.value

    def __repr__(self) -> str:
        return f"Certificate({self.value!r})"


class DecompositionOrdering:
    """
    ≺_dec over (G, D̄, σ), evaluated by memoized recursion.

    ``certificate`` returns a totally ordered key whose comparison agrees with
    ``cmp_dec``; equal certificates mean incomparable. With
    ``mark_refinements`` every refinement by D recolors D's distinguished
    non-edge with -2 for the rest of the recursion.
    """

    def __init__(self, settings: Settings | None = None, mark_refinements: bool = False):
        self.settings = settings or Settings()
        self.mark_refinements = mark_refinements
        self._tokens = count()
        self._graphs: dict[int, ColoredGraph] = {}
        self._roots: dict[int, NestedDecomposition] = {}
        self._certificates: dict[tuple, Certificate] = {}
        self._child_sets: dict[tuple, Certificate] = {}
        self._interned: dict[tuple, Certificate] = {}
        self._comparisons: dict[tuple, CmpResult] = {}
        self._refined: dict[tuple, NestedDecomposition] = {}

    # --- bookkeeping ---

    def frame(self, graph: ColoredGraph, nested: NestedDecomposition) -> Frame:
        """Register (G, D̄) and return the frame of its root."""
        token = next(self._tokens)
        self._graphs[token] = graph
        self._roots[token] = nested
        return Frame(token, nested, nested.root)

    def graph(self, frame: Frame) -> ColoredGraph:
        return self._graphs[frame.token]

    def seq_key(self, frame: Frame, sequence: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        return seq_key(self._graphs[frame.token], sequence, frame.marks)

    def children(self, frame: Frame) -> list[tuple[Frame, list[tuple[int, ...]]]]:
        """Child frames with their root-set orderings Π(c)."""
        return [
            (frame.at(child), pi(frame.nested, frame.node, child, self.settings))
            for child in frame.nested.base.children(frame.node)
        ]

    def refinements(self, frame: Frame, sigma: tuple[int, ...]) -> list[Frame]:
        """Frames of D̄_{D,σ} for every D in the root family, in family order."""
        out = []
        for tag, member in enumerate(frame.family):
            key = (frame.token, frame.node, tag, frozenset(sigma))
            refined = self._refined.get(key)
            if refined is None:
                refined = refine(frame.nested.subdecomposition(frame.node), member, sigma)
                self._refined[key] = refined
            marks = frame.marks
            if self.mark_refinements and member.anchor is not None:
                marks = marks | {member.anchor}
            out.append(Frame(frame.token, refined, refined.root, marks))
        return out

    # --- certificates ---

    def _intern(self, value: tuple) -> Certificate:
        cert = self._interned.get(value)
        if cert is None:
            cert = self._interned[value] = Certificate(value)
        return cert

    def certificate(self, frame: Frame, sigma: Sequence[int]) -> Certificate:
        sigma = tuple(sigma)
        key = frame.key(sigma)
        cached = self._certificates.get(key)
        if cached is not None:
            return cached

        size, family = frame.size, frame.family
        if size == 1:
            value = (1, 0, self.seq_key(frame, sigma))
        elif not family:
            value = (size, 0, self._children_key(frame, sigma))
        else:
            refined = sorted(self.certificate(sub, sigma) for sub in self.refinements(frame, sigma))
            value = (size, len(family), len(refined), tuple(refined))
        cert = self._certificates[key] = self._intern(value)
        return cert

    def option_key(self, child: Frame, tau: tuple[int, ...], parent: Frame, sigma: tuple[int, ...]) -> tuple:
        """Key of ((G_c, D̄_c, τ), (G, στ)): decomposition component first."""
        return self.certificate(child, tau), self.seq_key(parent, sigma + tau)

    def child_set_key(
        self, child: Frame, orderings: list[tuple[int, ...]], parent: Frame, sigma: tuple[int, ...]
    ) -> Certificate:
        key = (parent.key(sigma), child.node)
        cached = self._child_sets.get(key)
        if cached is None:
            options = sorted(self.option_key(child, tau, parent, sigma) for tau in orderings)
            cached = self._child_sets[key] = self._intern((len(options), tuple(options)))
        return cached

    def _children_key(self, frame: Frame, sigma: tuple[int, ...]) -> Certificate:
        keys = sorted(self.child_set_key(child, orderings, frame, sigma) for child, orderings in self.children(frame))
        return self._intern((len(keys), tuple(keys)))

    def compare(self, frame: Frame, sigma: Sequence[int], other: Frame, other_sigma: Sequence[int]) -> CmpResult:
        """≺_dec through certificates."""
        return CmpResult.of(self.certificate(frame, sigma), self.certificate(other, other_sigma))

    # --- literal evaluation ---

    def cmp_dec(self, frame: Frame, sigma: Sequence[int], other: Frame, other_sigma: Sequence[int]) -> CmpResult:
        """
        ≺_dec by its four cases: size, bag, recursive and refinement
        comparison, with set comparisons done on cross-comparison matrices.
        """
        sigma, other_sigma = tuple(sigma), tuple(other_sigma)
        key = (frame.key(sigma), other.key(other_sigma))
        cached = self._comparisons.get(key)
        if cached is not None:
            return cached

        result = CmpResult.of((frame.size, len(frame.family)), (other.size, len(other.family)))
        if result is CmpResult.INCOMPARABLE:
            if frame.size == 1:
                result = CmpResult.of(self.seq_key(frame, sigma), self.seq_key(other, other_sigma))
            elif not frame.family:
                result = cmp_sets(
                    self._option_sets(frame, sigma), self._option_sets(other, other_sigma), self._cmp_option_sets
                )
            else:
                result = cmp_sets(
                    [(sub, sigma) for sub in self.refinements(frame, sigma)],
                    [(sub, other_sigma) for sub in self.refinements(other, other_sigma)],
                    lambda a, b: self.cmp_dec(a[0], a[1], b[0], b[1]),
                )

        self._comparisons[key] = result
        self._comparisons[(key[1], key[0])] = result.flip()
        return result

    def _option_sets(self, frame: Frame, sigma: tuple[int, ...]) -> list[list[tuple[Frame, tuple, Frame, tuple]]]:
        return [
            [(child, tau, frame, sigma + tau) for tau in orderings]
            for child, orderings in self.children(frame)
        ]

    def _cmp_option_pair(self, a: tuple, b: tuple) -> CmpResult:
        child_a, tau_a, parent_a, seq_a = a
        child_b, tau_b, parent_b, seq_b = b
        return cmp_tuples(
            ((child_a, tau_a), (parent_a, seq_a)),
            ((child_b, tau_b), (parent_b, seq_b)),
            [
                lambda x, y: self.cmp_dec(x[0], x[1], y[0], y[1]),
                lambda x, y: CmpResult.of(self.seq_key(x[0], x[1]), self.seq_key(y[0], y[1])),
            ],
        )

    def _cmp_option_sets(self, a: list, b: list) -> CmpResult:
        return cmp_sets(a, b, self._cmp_option_pair)

    def memo_size(self) -> int:
        return len(self._certificates) + len(self._child_sets) + len(self._comparisons)


def cmp_dec(
    graph: ColoredGraph,
    nested: NestedDecomposition,
    sigma: Sequence[int],
    other_graph: ColoredGraph,
    other_nested: NestedDecomposition,
    other_sigma: Sequence[int],
    settings: Settings | None = None,
) -> CmpResult:
    """Compare (G, D̄, σ) with (G′, D̄′, σ′) under ≺_dec."""
    ordering = DecompositionOrdering(settings)
    return ordering.cmp_dec(ordering.frame(graph, nested), sigma, ordering.frame(other_graph, other_nested), other_sigma)
