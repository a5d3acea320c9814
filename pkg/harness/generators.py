"""Seeded graph generators for the test corpus."""
import random
from itertools import combinations

from domain.exceptions import DomainError
from domain.graph_models import ColoredGraph


def random_partial_ktree(n: int, k: int, edge_keep_probability: float, seed: int) -> ColoredGraph:
    """
    A random k-tree on n vertices with every edge kept independently with the
    given probability. Treewidth is at most k by construction.

    Vertices are 0..n-1 under a seeded random labeling, so the clique the
    k-tree grows from is not always {0..k}.
    """
    if k < 0 or n < k + 1:
        raise DomainError("random_partial_ktree", "need n ≥ k+1 and k ≥ 0", n=n, k=k)
    if not 0.0 <= edge_keep_probability <= 1.0:
        raise DomainError("random_partial_ktree", "edge_keep_probability must lie in [0, 1]")
    rng = random.Random(seed)

    edges = set(combinations(range(k + 1), 2))
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        drop = rng.randrange(k + 1)
        attach = base[:drop] + base[drop + 1:]
        edges.update((u, v) for u in attach)
        cliques.append(attach + (v,))

    labels = list(range(n))
    rng.shuffle(labels)
    kept = [e for e in sorted(edges) if rng.random() < edge_keep_probability]
    return ColoredGraph.from_edges(range(n), [(labels[u], labels[v]) for u, v in kept])


def path(n: int) -> ColoredGraph:
    return ColoredGraph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> ColoredGraph:
    if n < 3:
        raise DomainError("cycle", "a cycle needs at least three vertices", n=n)
    return ColoredGraph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> ColoredGraph:
    return ColoredGraph.from_edges(range(n), combinations(range(n), 2))


def empty(n: int) -> ColoredGraph:
    return ColoredGraph.from_edges(range(n))


def disjoint_union(*graphs: ColoredGraph) -> ColoredGraph:
    """Vertices of the i-th graph are shifted past those of the earlier ones."""
    vertices: list[int] = []
    edge_colors: dict[tuple[int, int], int] = {}
    offset = 0
    for graph in graphs:
        shift = {v: offset + i for i, v in enumerate(graph.vertices)}
        vertices.extend(shift[v] for v in graph.vertices)
        for (u, v), c in graph.edge_colors.items():
            edge_colors[(shift[u], shift[v])] = c
        offset += graph.order
    return ColoredGraph(vertices=tuple(vertices), edge_colors=edge_colors)


def random_permutation(graph: ColoredGraph, seed: int) -> tuple[ColoredGraph, dict[int, int]]:
    """π(G) for a seeded random bijection π of V(G), together with π."""
    rng = random.Random(seed)
    targets = list(graph.vertices)
    rng.shuffle(targets)
    mapping = dict(zip(graph.vertices, targets))
    return graph.relabel(mapping), mapping
