"""Clique separators, maximal c-atoms, atom trees and the clique-separator-free decomposition."""
import logging
from functools import lru_cache
from itertools import combinations

import networkx as nx

from domain.decomposition_models import AtomFamily, NodeId, RootedTreeDecomposition, TreeDecomposition
from domain.exceptions import ContractViolationError, DomainError
from domain.graph_models import EDGE_COLOR, ColoredGraph, edge_key
from engine.graph_core import components
from engine.treedec import check_width_promise, root_at_center, rooted_at, tree_center

logger = logging.getLogger(__name__)


class CliqueSeparatorIndex:
    """
    Every clique of size at most c whose removal disconnects the graph,
    together with the component labelling it induces.
    """

    def __init__(self, graph: ColoredGraph, c: int):
        self.graph = graph
        self.c = c
        self.separators: list[tuple[frozenset[int], dict[int, int]]] = []
        self._minimum: list[frozenset[int]] = []

        candidates = [frozenset()]
        if c >= 1:
            for clique in nx.enumerate_all_cliques(graph.to_networkx()):
                if len(clique) > c:
                    break
                candidates.append(frozenset(clique))

        for clique in candidates:
            parts = components(graph, clique)
            if len(parts) < 2:
                continue
            label = {v: i for i, part in enumerate(parts) for v in part}
            self.separators.append((clique, label))
            full = [part for part in parts if graph.neighborhood(part) == clique]
            if len(full) >= 2:
                self._minimum.append(clique)

        self._separable: set[tuple[int, int]] = set()
        for _, label in self.separators:
            for u, v in combinations(sorted(label), 2):
                if label[u] != label[v]:
                    self._separable.add((u, v))

    def is_separable(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._separable

    def is_inseparable_set(self, vertices) -> bool:
        members = sorted(vertices)
        return not any((u, v) in self._separable for u, v in combinations(members, 2))

    @property
    def has_separator(self) -> bool:
        return bool(self.separators)

    def minimum_separators(self) -> list[frozenset[int]]:
        """Inclusion-minimal clique separators (some pair has them as a minimal separator)."""
        return sorted(self._minimum, key=lambda s: (len(s), sorted(s)))


@lru_cache(maxsize=512)
def clique_separator_index(graph: ColoredGraph, c: int) -> CliqueSeparatorIndex:
    return CliqueSeparatorIndex(graph, c)


def is_c_inseparable(graph: ColoredGraph, u: int, v: int, c: int) -> bool:
    """True iff no clique with at most c vertices separates u from v."""
    if u == v:
        raise DomainError("is_c_inseparable", "endpoints must differ", vertex=u)
    graph.require_vertices((u, v))
    if graph.has_edge(u, v):
        return True
    return not clique_separator_index(graph, c).is_separable(u, v)


def maximal_c_atoms(graph: ColoredGraph, c: int) -> AtomFamily:
    """
    Vertex sets of all maximal c-atoms, i.e. the maximal c-inseparable sets.

    Sets with at most c vertices are tested directly. Every larger maximal set
    is the closure {a | I ∪ {a} is c-inseparable} of each of its c-inseparable
    (c+1)-subsets I.
    """
    if c < 0:
        raise DomainError("maximal_c_atoms", "c must be non-negative", c=c)
    index = clique_separator_index(graph, c)
    vertices = sorted(graph.vertices)
    found: set[frozenset[int]] = set()

    for size in range(1, min(c, len(vertices)) + 1):
        for subset in combinations(vertices, size):
            if not index.is_inseparable_set(subset):
                continue
            if any(index.is_inseparable_set(subset + (a,)) for a in vertices if a not in subset):
                continue
            found.add(frozenset(subset))

    if len(vertices) > c:
        for seed in combinations(vertices, c + 1):
            if not index.is_inseparable_set(seed):
                continue
            closure = frozenset(a for a in vertices if index.is_inseparable_set(seed + (a,)) or a in seed)
            found.add(closure)

    return AtomFamily(c=c, atoms=tuple(sorted(found, key=lambda a: (len(a), sorted(a)))))


def chordal_completion_c(graph: ColoredGraph, c: int) -> ColoredGraph:
    """G^c: every maximal c-atom becomes a clique (new edges get color 1)."""
    extra = {}
    for atom in maximal_c_atoms(graph, c).atoms:
        for u, v in combinations(sorted(atom), 2):
            if not graph.has_edge(u, v):
                extra[(u, v)] = EDGE_COLOR
    return graph.with_edges(extra) if extra else graph


def atom_tree(graph: ColoredGraph, c: int) -> RootedTreeDecomposition:
    """
    The tree of maximal c-atoms and minimum clique separators of size ≤ c.

    Atom node ("atom", A) and separator node ("sep", C) are adjacent iff C ⊆ A.
    The result is rooted at the unique center of that tree.

    Raises:
        ContractViolationError: If the graph is not a (c−1)-atom, or the
            construction does not yield a tree with a unique center.
    """
    if c < 1:
        raise DomainError("atom_tree", "c must be positive", c=c)
    if graph.order == 0:
        raise DomainError("atom_tree", "the graph is empty")
    if clique_separator_index(graph, c - 1).has_separator:
        raise ContractViolationError("atom_tree", f"the graph has a clique separator of size at most {c - 1}")

    atoms = maximal_c_atoms(graph, c).atoms
    separators = clique_separator_index(graph, c).minimum_separators()
    atom_ids = [("atom", tuple(sorted(a))) for a in atoms]
    sep_ids = [("sep", tuple(sorted(s))) for s in separators]
    bags: dict[NodeId, frozenset[int]] = dict(zip(atom_ids, atoms))
    bags.update(zip(sep_ids, separators))
    edges = [
        (aid, sid)
        for sid, sep in zip(sep_ids, separators)
        for aid, atom in zip(atom_ids, atoms)
        if sep <= atom
    ]

    tree = nx.Graph()
    tree.add_nodes_from(bags)
    tree.add_edges_from(edges)
    if not nx.is_tree(tree):
        raise ContractViolationError("atom_tree", "atoms and separators do not form a tree", c=c)
    center = tree_center(tree)
    if len(center) != 1:
        raise ContractViolationError("atom_tree", "the atom tree has no unique center", c=c)

    unrooted = TreeDecomposition(nodes=tuple(atom_ids + sep_ids), edges=tuple(edges), bags=bags)
    logger.debug("atom tree at c=%d: %d atoms, %d separators", c, len(atom_ids), len(sep_ids))
    return rooted_at(unrooted, center[0])


def _bag_node(graph: ColoredGraph) -> RootedTreeDecomposition:
    return RootedTreeDecomposition.single_bag(graph.vertices, node=("bag", tuple(sorted(graph.vertices))))


def _atoms_between(graph: ColoredGraph, d: int, c: int) -> RootedTreeDecomposition:
    """Decompose a d-atom into c-atoms with clique adhesions."""
    if d >= c or not clique_separator_index(graph, c).has_separator:
        return _bag_node(graph)

    outer = atom_tree(graph, d + 1)
    inner = {a: _atoms_between(graph.induced_subgraph(outer.bags[a]), d + 1, c) for a in outer.nodes}

    nodes: list[NodeId] = []
    bags: dict[NodeId, frozenset[int]] = {}
    edges: list[tuple[NodeId, NodeId]] = []
    for a in outer.nodes:
        part = inner[a]
        for b in part.nodes:
            nodes.append((b, a))
            bags[(b, a)] = part.bags[b]
        edges.extend(((b, a), (p, a)) for b, p in part.parent.items())

    for a1, a2 in outer.tree_edges():
        common = outer.bags[a1] & outer.bags[a2]
        b1 = inner[a1].highest_node_containing(common)
        b2 = inner[a2].highest_node_containing(common)
        if b1 is None or b2 is None:
            raise ContractViolationError("clique_free_decomposition", "no bag holds the atom intersection", node=a1)
        edges.append(((b1, a1), (b2, a2)))

    return root_at_center(TreeDecomposition(nodes=tuple(nodes), edges=tuple(edges), bags=bags))


def clique_free_decomposition(graph: ColoredGraph, k: int) -> RootedTreeDecomposition:
    """
    An isomorphism-invariant tree decomposition whose bags induce
    clique-separator-free subgraphs and whose adhesion sets are cliques.

    Raises:
        ContractViolationError: If the graph is disconnected or tw(G) > k.
    """
    if graph.order == 0:
        raise DomainError("clique_free_decomposition", "the graph is empty")
    if len(components(graph)) > 1:
        raise ContractViolationError("clique_free_decomposition", "the graph is disconnected")
    check_width_promise(graph, k)
    decomposition = _atoms_between(graph, 0, k + 1)
    logger.debug(
        "clique-free decomposition: %d bags, largest %d", decomposition.size, decomposition.width + 1
    )
    return decomposition
