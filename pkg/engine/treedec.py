"""Tree decompositions: validation, rooting at the center, treewidth oracles and impr."""
import logging
from collections.abc import Sequence

import networkx as nx

from config.settings import Settings
from domain.decomposition_models import NodeId, RootedTreeDecomposition, TreeDecomposition, ValidationReport
from domain.exceptions import CapacityError, ContractViolationError, DomainError
from domain.graph_models import EDGE_COLOR, IMPROVEMENT_COLOR, ColoredGraph, edge_key
from engine.graph_core import connectivity

logger = logging.getLogger(__name__)

AnyDecomposition = TreeDecomposition | RootedTreeDecomposition


def _tree_view(decomposition: AnyDecomposition) -> tuple[tuple[NodeId, ...], list[tuple[NodeId, NodeId]], dict]:
    if isinstance(decomposition, RootedTreeDecomposition):
        return decomposition.nodes, decomposition.tree_edges(), decomposition.bags
    return decomposition.nodes, list(decomposition.edges), decomposition.bags


# === Validation and basic measures ===


def validate(graph: ColoredGraph, decomposition: AnyDecomposition) -> ValidationReport:
    """
    Check the connectedness and covering properties of a tree decomposition.

    The report names the first violated property together with a witness
    (a vertex for connectedness, an edge for covering).
    """
    nodes, edges, bags = _tree_view(decomposition)
    vertices = set(graph.vertices)
    for node in nodes:
        stray = bags[node] - vertices
        if stray:
            return ValidationReport(
                valid=False,
                violated="vertex",
                witness=(node, min(stray)),
                message=f"bag of {node!r} holds unknown vertex {min(stray)}",
            )

    tree = nx.Graph()
    tree.add_nodes_from(nodes)
    tree.add_edges_from(edges)
    for v in graph.vertices:
        holding = [n for n in nodes if v in bags[n]]
        if not holding or not nx.is_connected(tree.subgraph(holding)):
            return ValidationReport(
                valid=False,
                violated="connectedness",
                witness=v,
                message=f"bags containing vertex {v} do not form a nonempty subtree",
            )

    for u, v in graph.edges:
        if not any(u in bags[n] and v in bags[n] for n in nodes):
            return ValidationReport(
                valid=False,
                violated="covering",
                witness=(u, v),
                message=f"edge {(u, v)} lies in no bag",
            )
    return ValidationReport(valid=True)


def width(decomposition: AnyDecomposition) -> int:
    _, _, bags = _tree_view(decomposition)
    return max((len(b) for b in bags.values()), default=0) - 1


def adhesion(decomposition: RootedTreeDecomposition, node: NodeId, other: NodeId) -> frozenset[int]:
    return decomposition.adhesion(node, other)


def torso(graph: ColoredGraph, decomposition: RootedTreeDecomposition, node: NodeId) -> ColoredGraph:
    """G[B_n] with every adhesion set towards a neighbor turned into a clique (new edges get color 1)."""
    bag = decomposition.bags.get(node)
    if bag is None:
        raise DomainError("torso", f"unknown node {node!r}", node=node)
    base = graph.induced_subgraph(bag)
    extra = {}
    for other in decomposition.neighbors(node):
        members = sorted(decomposition.adhesion(node, other))
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if not base.has_edge(u, v):
                    extra[edge_key(u, v)] = EDGE_COLOR
    return base.with_edges(extra) if extra else base


# === Rooting ===


def tree_center(tree: nx.Graph) -> list[NodeId]:
    """The one or two central nodes of a tree, found by repeated leaf stripping."""
    remaining = set(tree.nodes)
    degree = {n: tree.degree(n) for n in remaining}
    layer = [n for n in remaining if degree[n] <= 1]
    while len(remaining) > 2:
        remaining.difference_update(layer)
        next_layer = []
        for leaf in layer:
            for other in tree.neighbors(leaf):
                if other in remaining:
                    degree[other] -= 1
                    if degree[other] == 1:
                        next_layer.append(other)
        layer = next_layer
    return [n for n in tree.nodes if n in remaining]


def rooted_at(
    decomposition: TreeDecomposition, root: NodeId, **extra
) -> RootedTreeDecomposition:
    """Orient an unrooted decomposition away from `root`."""
    tree = decomposition.to_networkx()
    parent = {child: par for par, child in nx.bfs_edges(tree, root)}
    return RootedTreeDecomposition(
        nodes=decomposition.nodes,
        parent=parent,
        bags=dict(decomposition.bags),
        root=root,
        **extra,
    )


def root_at_center(decomposition: TreeDecomposition, **extra) -> RootedTreeDecomposition:
    """
    Root a tree decomposition at the center of its tree.

    When the center is an edge {a, b} the edge is subdivided by a new node
    whose bag is B_a ∩ B_b; the adhesion sets stay the same.
    """
    if not decomposition.nodes:
        raise DomainError("root_at_center", "the tree is empty")
    center = tree_center(decomposition.to_networkx())
    if len(center) == 1:
        return rooted_at(decomposition, center[0], **extra)

    a, b = center
    middle = ("center", a, b)
    if middle in decomposition.bags:
        raise ContractViolationError("root_at_center", "subdivision node id already in use", node=middle)
    edges = [e for e in decomposition.edges if set(e) != {a, b}]
    edges += [(middle, a), (middle, b)]
    bags = dict(decomposition.bags)
    bags[middle] = decomposition.bags[a] & decomposition.bags[b]
    subdivided = TreeDecomposition(nodes=decomposition.nodes + (middle,), edges=tuple(edges), bags=bags)
    return rooted_at(subdivided, middle, **extra)


# === Elimination orderings ===


def decomposition_from_elimination(graph: ColoredGraph, order: Sequence[int]) -> TreeDecomposition:
    """The bag-per-eliminated-vertex decomposition of an elimination ordering."""
    if len(order) != graph.order or set(order) != set(graph.vertices):
        raise DomainError("decomposition_from_elimination", "order is not a permutation of V(G)")
    position = {v: i for i, v in enumerate(order)}
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices}
    bags: dict[NodeId, frozenset[int]] = {}
    attach: dict[int, int] = {}
    for v in order:
        later = adj.pop(v)
        bags[("elim", v)] = frozenset(later | {v})
        for u in later:
            adj[u] |= later - {u}
            adj[u].discard(v)
        if later:
            attach[v] = min(later, key=position.__getitem__)

    edges = [(("elim", v), ("elim", p)) for v, p in attach.items()]
    # one tree per component; chain the component roots together
    roots = [v for v in order if v not in attach]
    edges += [(("elim", x), ("elim", y)) for x, y in zip(roots, roots[1:])]
    return TreeDecomposition(nodes=tuple(("elim", v) for v in order), edges=tuple(edges), bags=bags)


def _fill_in(adj: dict[int, set[int]], v: int) -> int:
    members = sorted(adj[v])
    return sum(1 for i, a in enumerate(members) for b in members[i + 1:] if b not in adj[a])


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u] |= nbrs - {u}
        adj[u].discard(v)


def treewidth_upper_bound(graph: ColoredGraph) -> tuple[int, list[int]]:
    """Min-fill."""
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices}
    best = 0
    order = []
    while adj:
        _, _, v = min((_fill_in(adj, u), graph.vertex_index(u), u) for u in adj)
        best = max(best, len(adj[v]))
        _eliminate(adj, v)
        order.append(v)
    return best, order


def _min_degree_bound(adj: dict[int, set[int]]) -> int:
    """Degeneracy of the remaining graph; a lower bound on its treewidth."""
    work = {v: set(ns) for v, ns in adj.items()}
    bound = 0
    while work:
        v = min(work, key=lambda u: (len(work[u]), u))
        bound = max(bound, len(work[v]))
        for u in work.pop(v):
            work[u].discard(v)
    return bound


def treewidth_branch_and_bound(graph: ColoredGraph) -> int:
    """
    Exact treewidth by branch and bound over elimination orderings.

    Simplicial vertices are eliminated greedily; the degeneracy of the
    remaining graph bounds every branch from below.
    """
    if graph.order <= 1:
        return 0
    upper, _ = treewidth_upper_bound(graph)
    best = upper
    seen: dict[frozenset[int], int] = {}

    def search(adj: dict[int, set[int]], so_far: int) -> None:
        nonlocal best
        if len(adj) <= so_far + 1:
            best = min(best, so_far)
            return
        if max(so_far, _min_degree_bound(adj)) >= best:
            return
        candidates = sorted(adj, key=lambda u: (len(adj[u]), u))
        for v in candidates:
            if all(b in adj[a] for a in adj[v] for b in adj[v] if a != b):
                candidates = [v]
                break
        for v in candidates:
            reached = max(so_far, len(adj[v]))
            if reached >= best:
                continue
            child = {u: set(ns) for u, ns in adj.items()}
            _eliminate(child, v)
            key = frozenset(child)
            if seen.get(key, best) <= reached:
                continue
            seen[key] = reached
            search(child, reached)

    search({v: set(graph.neighbors(v)) for v in graph.vertices}, 0)
    return best


def treewidth_exact(graph: ColoredGraph, settings: Settings | None = None) -> int:
    """
    Exact treewidth by dynamic programming over vertex subsets.

    TW(S ∪ {v}) = min over v of max(TW(S), |Q(S, v)|), where Q(S, v) are the
    vertices outside S ∪ {v} reachable from v through S. States that cannot
    beat the min-fill bound are dropped.

    Raises:
        CapacityError: If the graph exceeds the configured oracle limit.
    """
    settings = settings or Settings()
    n = graph.order
    if n > settings.oracle_limit:
        raise CapacityError(
            "treewidth oracle input", n, settings.oracle_limit, remedy="pass the width bound k explicitly"
        )
    if n <= 1:
        return 0
    upper, _ = treewidth_upper_bound(graph)
    index = {v: i for i, v in enumerate(graph.vertices)}
    nbr = [0] * n
    for u, v in graph.edge_colors:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]

    def outside_reach(subset: int, v: int) -> int:
        visited = frontier = 1 << v
        reached = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = nbr[low.bit_length() - 1] & ~visited
            visited |= fresh
            frontier |= fresh & subset
            reached |= fresh & ~subset
        return reached.bit_count()

    layer = {0: -1}
    for _ in range(n):
        following: dict[int, int] = {}
        for subset, value in layer.items():
            for v in range(n):
                if subset >> v & 1:
                    continue
                candidate = max(value, outside_reach(subset, v))
                if candidate >= upper:
                    continue
                grown = subset | 1 << v
                if candidate < following.get(grown, upper):
                    following[grown] = candidate
        if not following:
            return upper
        layer = following
    return min(layer.get((1 << n) - 1, upper), upper)


def check_width_promise(graph: ColoredGraph, k: int, settings: Settings | None = None) -> None:
    """
    Enforce tw(G) ≤ k as far as the oracle allows.

    Raises:
        ContractViolationError: If the graph provably has treewidth above k.
    """
    settings = settings or Settings()
    heuristic, _ = treewidth_upper_bound(graph)
    if heuristic <= k:
        return
    if graph.order <= settings.oracle_limit:
        exact = treewidth_exact(graph, settings)
        if exact > k:
            raise ContractViolationError("width promise", f"tw(G) = {exact} exceeds k = {k}", treewidth=exact, k=k)
        return
    logger.warning(
        "min-fill width %d exceeds k=%d on %d vertices; trusting the promise", heuristic, k, graph.order
    )


# === Improvement ===


def improve(graph: ColoredGraph, k: int, settings: Settings | None = None) -> ColoredGraph:
    """
    impr(G): join every non-adjacent pair whose connectivity exceeds k by an edge of color 2.

    Colors of existing edges are kept, so improvement edges from an earlier
    pass count as edges and improve is idempotent.

    Raises:
        ContractViolationError: If k is below the treewidth of the graph.
    """
    check_width_promise(graph, k, settings)
    extra = {(u, v): IMPROVEMENT_COLOR for u, v in graph.non_edges() if connectivity(graph, u, v) > k}
    if not extra:
        return graph
    logger.debug("improvement added %d edges for k=%d", len(extra), k)
    return graph.with_edges(extra)
