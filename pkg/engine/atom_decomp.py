"""Interface separators, descriptor decompositions and bounded-width decompositions of atoms."""
import logging
from collections.abc import Iterable
from itertools import combinations, permutations

from tenacity import Retrying, before_sleep_log, retry_if_exception_type, stop_after_attempt

from config.settings import Settings
from domain.decomposition_models import (
    DescriptorDecomposition,
    GraphWithInterface,
    NodeId,
    RootedTreeDecomposition,
)
from domain.exceptions import ContractViolationError, DomainError, ThresholdContractError
from domain.graph_models import ColoredGraph, edge_key
from engine.atoms import clique_separator_index
from engine.graph_core import components, connectivity, connectivity_sets, leftmost_min_separator

logger = logging.getLogger(__name__)


def sep_s(gi: GraphWithInterface, s: int, tw: int) -> frozenset[int]:
    """
    sep_s(H, I): the interface together with the leftmost minimum separators
    between parts of it that are weakly connected.

    For |I| ≤ s the parts are single vertices x ≠ y with κ(x, y) ≤ tw; for
    larger interfaces they are disjoint (tw+1)-subsets X, Y with κ(X, Y) ≤ tw.
    """
    graph, interface = gi.graph, gi.interface
    result = set(interface)
    members = sorted(interface)
    if len(members) <= s:
        for x, y in permutations(members, 2):
            if connectivity(graph, x, y) <= tw:
                result |= leftmost_min_separator(graph, (x,), (y,))
        return frozenset(result)

    for xs in combinations(members, tw + 1):
        rest = [v for v in members if v not in xs]
        for ys in combinations(rest, tw + 1):
            if connectivity_sets(graph, xs, ys) <= tw:
                result |= leftmost_min_separator(graph, xs, ys)
    return frozenset(result)


def split_at(gi: GraphWithInterface, separator: Iterable[int]) -> list[GraphWithInterface]:
    """One graph with interface (H[C ∪ N(C)], N(C)) per component C of H − S."""
    separator = frozenset(separator)
    if not gi.interface <= separator:
        raise DomainError("split_at", "the separator must contain the interface")
    graph = gi.graph
    pieces = []
    for part in components(graph, separator):
        boundary = graph.neighborhood(part)
        pieces.append(
            GraphWithInterface.checked(graph.induced_subgraph(set(part) | boundary), boundary, "split_at")
        )
    return pieces


def _check_anchor(graph: ColoredGraph, uv: tuple[int, int], operation: str) -> tuple[int, int]:
    u, v = uv
    graph.require_vertices((u, v))
    if u == v or graph.has_edge(u, v):
        raise ContractViolationError(operation, f"{uv} is not a non-edge of the graph")
    return edge_key(u, v)


def descriptor_decomposition(
    graph: ColoredGraph,
    uv: tuple[int, int],
    k: int,
    settings: Settings | None = None,
    scale: int = 1,
) -> DescriptorDecomposition:
    """
    Descriptor decomposition of an improved atom anchored at the non-edge uv.

    Args:
        graph: Connected, improved graph without clique separators, tw ≤ k.
        uv: The distinguished non-edge.
        k: Treewidth bound.
        settings: Threshold configuration (small/medium factors).
        scale: Multiplier applied to both thresholds.

    Returns:
        The reachable descriptor tree, with the largest separator recorded
        under ``max_separator`` in its metadata.

    Raises:
        ContractViolationError: If a precondition fails.
        ThresholdContractError: If an expansion stalls under the current thresholds.
    """
    settings = settings or Settings()
    u, v = _check_anchor(graph, uv, "descriptor_decomposition")
    if len(components(graph)) > 1:
        raise ContractViolationError("descriptor_decomposition", "the graph is disconnected")
    if clique_separator_index(graph, k + 1).has_separator:
        raise ContractViolationError("descriptor_decomposition", "the graph has a clique separator")
    small, medium = settings.small(k, scale), settings.medium(k, scale)

    root_label = GraphWithInterface.checked(graph, (), "descriptor_decomposition")
    root = root_label.key
    labels: dict[NodeId, GraphWithInterface] = {root: root_label}
    children: dict[NodeId, tuple[NodeId, ...]] = {}
    order: list[NodeId] = [root]

    first = []
    for part in components(graph, (u, v)):
        label = GraphWithInterface.checked(graph.induced_subgraph(set(part) | {u, v}), (u, v), "descriptor_decomposition")
        labels[label.key] = label
        first.append(label.key)
    children[root] = tuple(first)

    largest = 0
    pending = list(reversed(first))
    while pending:
        key = pending.pop()
        order.append(key)
        label = labels[key]
        if not label.interior:
            children[key] = ()
            continue
        interface = label.interface
        if label.graph.is_clique(interface):
            raise ThresholdContractError("descriptor_decomposition", "interface is a clique", node=key)
        if len(interface) > medium:
            raise ThresholdContractError(
                "descriptor_decomposition", f"interface size {len(interface)} exceeds medium(k)={medium}", node=key
            )
        separator = sep_s(label, small, k)
        if not separator - interface:
            raise ThresholdContractError("descriptor_decomposition", "separator does not grow the interface", node=key)
        largest = max(largest, len(separator))

        below = []
        for piece in split_at(label, separator):
            labels[piece.key] = piece
            below.append(piece.key)
        leaf = ("separator", key)
        labels[leaf] = GraphWithInterface.checked(label.graph.induced_subgraph(separator), separator, "descriptor_decomposition")
        below.append(leaf)
        children[key] = tuple(below)
        pending.extend(reversed(below))

    logger.debug("descriptor decomposition for %s: %d nodes, largest separator %d", (u, v), len(order), largest)
    return DescriptorDecomposition(
        nodes=tuple(order),
        children=children,
        labels=labels,
        root=root,
        metadata={"anchor": (u, v), "max_separator": largest, "small": small, "medium": medium},
    )


def descriptor_to_treedec(descriptor: DescriptorDecomposition) -> RootedTreeDecomposition:
    """
    Bag of (H, I) = I ∪ {x lying in at least two of the child interfaces}.

    Raises:
        ContractViolationError: If the descriptor decomposition is malformed.
    """
    problems = descriptor.violations()
    if problems:
        raise ContractViolationError("descriptor_to_treedec", problems[0], node=descriptor.root)

    bags: dict[NodeId, frozenset[int]] = {}
    parent: dict[NodeId, NodeId] = {}
    for node in descriptor.nodes:
        label = descriptor.labels[node]
        seen: set[int] = set()
        shared: set[int] = set()
        for child in descriptor.children.get(node, ()):
            interface = descriptor.labels[child].interface
            shared |= seen & interface
            seen |= interface
            parent[child] = node
        bags[node] = frozenset(label.interface | shared)

    return RootedTreeDecomposition(nodes=descriptor.nodes, parent=parent, bags=bags, root=descriptor.root)


def atom_bounded_decomposition(
    graph: ColoredGraph,
    uv: tuple[int, int],
    k: int,
    settings: Settings | None = None,
) -> RootedTreeDecomposition:
    """
    Isomorphism-invariant bounded-width decomposition of an improved atom
    anchored at the non-edge uv.

    Stalled expansions are retried with doubled thresholds, at most
    ``threshold_retries`` times.
    """
    settings = settings or Settings()
    anchor = _check_anchor(graph, uv, "atom_bounded_decomposition")

    retrying = Retrying(
        stop=stop_after_attempt(settings.threshold_retries + 1),
        retry=retry_if_exception_type(ThresholdContractError),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    )
    for attempt in retrying:
        with attempt:
            number = attempt.retry_state.attempt_number
            descriptor = descriptor_decomposition(graph, anchor, k, settings, scale=2 ** (number - 1))

    decomposition = descriptor_to_treedec(descriptor)
    meta = descriptor.metadata
    return decomposition.model_copy(
        update={
            "anchor": anchor,
            "metadata": {
                "k": k,
                "k_prime": decomposition.width,
                "width_bound": meta["max_separator"] + meta["medium"] + 2,
                "max_separator": meta["max_separator"],
                "retries": number - 1,
            },
        }
    )
