"""
Reference oracles for the test suites.

Everything here works on plain networkx graphs and exhaustive enumeration;
nothing is imported from the pipeline.
"""
from collections.abc import Sequence
from itertools import combinations

import networkx as nx
from networkx.algorithms import isomorphism

from config.settings import Settings
from domain.exceptions import CapacityError
from domain.graph_models import ColoredGraph


def _colored_nx(graph: ColoredGraph, anchors: Sequence[int] = ()) -> nx.Graph:
    position = {v: i for i, v in enumerate(anchors)}
    out = nx.Graph()
    out.add_nodes_from((v, {"anchor": position.get(v, -1)}) for v in graph.vertices)
    out.add_edges_from((u, v, {"color": c}) for (u, v), c in graph.edge_colors.items())
    return out


def _matcher(graph: ColoredGraph, sigma: Sequence[int], other: ColoredGraph, other_sigma: Sequence[int]):
    return isomorphism.GraphMatcher(
        _colored_nx(graph, sigma),
        _colored_nx(other, other_sigma),
        node_match=isomorphism.categorical_node_match("anchor", -1),
        edge_match=isomorphism.categorical_edge_match("color", 1),
    )


def _check_capacity(graph: ColoredGraph, other: ColoredGraph, settings: Settings | None) -> None:
    limit = (settings or Settings()).brute_force_limit
    size = max(graph.order, other.order)
    if size > limit:
        raise CapacityError("brute-force isomorphism", size, limit, remedy="use a smaller graph")


def brute_force_isomorphic_respecting(
    graph: ColoredGraph,
    sigma: Sequence[int],
    other: ColoredGraph,
    other_sigma: Sequence[int],
    settings: Settings | None = None,
) -> dict[int, int] | None:
    """A color-preserving bijection mapping sigma[i] to other_sigma[i], or None."""
    _check_capacity(graph, other, settings)
    if graph.order != other.order or len(sigma) != len(other_sigma):
        return None
    matcher = _matcher(graph, sigma, other, other_sigma)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def brute_force_isomorphic(
    graph: ColoredGraph, other: ColoredGraph, settings: Settings | None = None
) -> dict[int, int] | None:
    """A color-preserving bijection V(G) → V(H), or None (VF2 backtracking)."""
    return brute_force_isomorphic_respecting(graph, (), other, (), settings)


def _separates(g: nx.Graph, removed: set, x, y) -> bool:
    rest = g.subgraph(set(g.nodes) - removed)
    return not nx.has_path(rest, x, y)


def brute_force_connectivity(graph: ColoredGraph, x: int, y: int) -> float:
    """Smallest |S| with x, y ∉ S separating them; infinity for adjacent pairs."""
    g = graph.to_networkx()
    if g.has_edge(x, y):
        return float("inf")
    candidates = [v for v in g.nodes if v not in (x, y)]
    for size in range(len(candidates) + 1):
        for subset in combinations(candidates, size):
            if _separates(g, set(subset), x, y):
                return size
    return float("inf")


def brute_force_min_separators(graph: ColoredGraph, x: int, y: int) -> list[frozenset[int]]:
    """Every minimum x-y separator of a non-adjacent pair."""
    g = graph.to_networkx()
    if g.has_edge(x, y):
        return []
    candidates = [v for v in g.nodes if v not in (x, y)]
    for size in range(len(candidates) + 1):
        found = [frozenset(s) for s in combinations(candidates, size) if _separates(g, set(s), x, y)]
        if found:
            return found
    return []


def brute_force_clique_separators(graph: ColoredGraph, c: int) -> list[frozenset[int]]:
    """Every clique with at most c vertices (the empty one included) whose removal disconnects G."""
    g = graph.to_networkx()
    cliques = [frozenset()] + [frozenset(q) for q in nx.enumerate_all_cliques(g) if len(q) <= c]
    out = []
    for clique in cliques:
        rest = g.subgraph(set(g.nodes) - clique)
        if rest.number_of_nodes() and not nx.is_connected(rest):
            out.append(clique)
    return out


def _separable_pairs(graph: ColoredGraph, c: int) -> set[frozenset[int]]:
    g = graph.to_networkx()
    pairs = set()
    for clique in brute_force_clique_separators(graph, c):
        for x, y in combinations(sorted(set(g.nodes) - clique), 2):
            if _separates(g, set(clique), x, y):
                pairs.add(frozenset((x, y)))
    return pairs


def brute_force_c_inseparable(graph: ColoredGraph, vertices, c: int) -> bool:
    """No clique of size ≤ c separates two vertices of the set."""
    separable = _separable_pairs(graph, c)
    return not any(frozenset(pair) in separable for pair in combinations(sorted(vertices), 2))


def brute_force_atoms(graph: ColoredGraph, c: int) -> list[frozenset[int]]:
    """Maximal c-inseparable vertex sets by subset enumeration."""
    separable = _separable_pairs(graph, c)
    vertices = sorted(graph.vertices)
    inseparable = [
        frozenset(subset)
        for size in range(1, len(vertices) + 1)
        for subset in combinations(vertices, size)
        if not any(frozenset(pair) in separable for pair in combinations(subset, 2))
    ]
    maximal = [s for s in inseparable if not any(s < t for t in inseparable)]
    return sorted(maximal, key=lambda a: (len(a), sorted(a)))
