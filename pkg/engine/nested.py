"""Nested tree decompositions: refinement, special children, p-boundedness and the invariant construction."""
import logging
from collections.abc import Callable, Sequence
from fractions import Fraction

from config.settings import Settings
from domain.decomposition_models import NestedDecomposition, NodeId, RootSet, RootedTreeDecomposition
from domain.exceptions import ContractViolationError, DomainError
from domain.graph_models import ColoredGraph
from engine.atom_decomp import atom_bounded_decomposition
from engine.atoms import clique_free_decomposition
from engine.graph_core import components
from engine.treedec import improve, torso, validate

logger = logging.getLogger(__name__)

Polynomial = Callable[[Fraction], Fraction | int]


def pbound_polynomial(k: int) -> Polynomial:
    """p(m) = ((k+1)(m+1))²."""
    return lambda m: ((k + 1) * (m + 1)) ** 2


# === Refinement ===


def refine(
    nested: NestedDecomposition,
    decomposition: RootedTreeDecomposition,
    sigma: Sequence[int] | RootSet,
) -> NestedDecomposition:
    """
    D̄ refined by D ∈ 𝓓_r with ordered root set σ.

    The root bag is replaced by D, rooted at the highest bag h of D containing
    σ, below a new root whose bag is σ. Former children of the root hang below
    the highest bag of D holding their adhesion set. All new nodes get empty
    families, so the result is strictly smaller than D̄.

    Raises:
        ContractViolationError: If D is not in the root family, σ repeats a vertex,
            or no bag of D contains σ.
    """
    base = nested.base
    root = base.root
    family = nested.family(root)
    tag = next((i for i, member in enumerate(family) if member is decomposition), None)
    if tag is None:
        tag = next((i for i, member in enumerate(family) if member == decomposition), None)
    if tag is None:
        raise ContractViolationError("refine", "decomposition is not in the root family", node=root)

    if not isinstance(sigma, RootSet):
        try:
            sigma = RootSet.ordered(sigma)
        except ValueError as e:
            raise ContractViolationError("refine", "root set repeats a vertex", node=root) from e
    wanted = sigma.vertices
    top = decomposition.highest_node_containing(wanted)
    if top is None:
        raise ContractViolationError("refine", f"no bag contains the root set {sorted(wanted)}", node=root)

    def inner(d: NodeId) -> NodeId:
        return ("refined", root, tag, top, d)

    new_root = ("refined-root", root, tag, wanted)
    nodes: list[NodeId] = [new_root]
    bags = {new_root: wanted}
    parent: dict[NodeId, NodeId] = {inner(top): new_root}
    for d, p in decomposition.rerooted(top).items():
        parent[inner(d)] = inner(p)
    for d in decomposition.nodes:
        nodes.append(inner(d))
        bags[inner(d)] = decomposition.bags[d]

    for node in base.nodes:
        if node == root:
            continue
        nodes.append(node)
        bags[node] = base.bags[node]
        if base.parent[node] == root:
            target = decomposition.highest_node_containing(base.adhesion(node, root))
            if target is None:
                raise ContractViolationError("refine", "no bag of D holds the adhesion set", node=node)
            parent[node] = inner(target)
        else:
            parent[node] = base.parent[node]

    refined = RootedTreeDecomposition(nodes=tuple(nodes), parent=parent, bags=bags, root=new_root)
    families = {n: f for n, f in nested.families.items() if n != root}
    return NestedDecomposition(graph=nested.graph, base=refined, families=families)


# === Special children and p-boundedness ===


def _special_prefix(
    graph: ColoredGraph,
    base: RootedTreeDecomposition,
    node: NodeId,
    size_of: Callable[[NodeId], int],
) -> tuple[list[NodeId], int, frozenset[int]]:
    kids = sorted(base.children(node), key=lambda c: (-size_of(c), tuple(sorted(base.bags[c]))))
    bag = base.bags[node]
    union: frozenset[int] = frozenset()
    best, attachment = 0, frozenset()
    for j, child in enumerate(kids, start=1):
        union |= bag & base.bags[child]
        if not graph.is_clique(union):
            break
        if j == len(kids) or size_of(kids[j - 1]) > size_of(kids[j]):
            best, attachment = j, union
    return kids, best, attachment


def special_children(nested: NestedDecomposition, node: NodeId) -> tuple[list[NodeId], frozenset[int]]:
    """The special children of `node` (largest first) and their attachment clique A_n."""
    kids, j, attachment = _special_prefix(nested.graph, nested.base, node, nested.subtree_size)
    return kids[:j], attachment


def is_p_bounded(nested: NestedDecomposition, p: Polynomial) -> bool:
    """|𝓓_n| ≤ p(|D̄| / |D̄_c|) for every node n and non-special child c, on exact fractions."""
    total = nested.size
    for node in nested.base.nodes:
        kids, j, _ = _special_prefix(nested.graph, nested.base, node, nested.subtree_size)
        count = len(nested.family(node))
        for child in kids[j:]:
            if count > p(Fraction(total, nested.subtree_size(child))):
                logger.debug("p-bound fails at %r for child %r", node, child)
                return False
    return True


def nested_violations(nested: NestedDecomposition) -> list[str]:
    """Broken nested-decomposition invariants (empty when well formed)."""
    problems = []
    report = validate(nested.graph, nested.base)
    if not report:
        problems.append(f"base decomposition: {report.message}")
    for node in nested.base.nodes:
        local = torso(nested.graph, nested.base, node)
        for member in nested.family(node):
            report = validate(local, member)
            if not report:
                problems.append(f"family member at {node!r}: {report.message}")
    unmarked = [n for n in nested.base.nodes if not nested.family(n)]
    if unmarked:
        if nested.root not in unmarked:
            problems.append("nodes with empty family do not contain the root")
        elif any(nested.base.parent[n] not in unmarked for n in unmarked if n != nested.root):
            problems.append("nodes with empty family are not connected")
    return problems


# === Invariant construction ===


def _anchor_pairs(
    graph: ColoredGraph,
    base: RootedTreeDecomposition,
    node: NodeId,
    size_of: Callable[[NodeId], int],
) -> list[tuple[int, int]]:
    bag = base.bags[node]
    kids, j, attachment = _special_prefix(graph, base, node, size_of)
    if j < len(kids):
        block = [c for c in kids[j:] if size_of(c) == size_of(kids[j])]
        extended = attachment.union(*(bag & base.bags[c] for c in block))
        pairs = graph.non_edges(extended)
        if pairs:
            return pairs
        logger.debug("attachment set at %r is a clique; using every non-edge of the bag", node)
    return graph.non_edges(bag)


def invariant_nested_decomposition(
    graph: ColoredGraph,
    k: int,
    settings: Settings | None = None,
    *,
    improved: ColoredGraph | None = None,
    base: RootedTreeDecomposition | None = None,
) -> NestedDecomposition:
    """
    The isomorphism-invariant p-bounded nested decomposition of impr(G).

    Bags with at most k+1 vertices get the single-bag family. Larger bags get
    one anchored atom decomposition per non-edge drawn from the attachment
    clique of their special children and the next block of equal-size
    children, or from the whole bag when every child is special.

    `improved` and `base` take impr(G) and its clique-separator-free
    decomposition when an earlier stage has built them already.

    Raises:
        ContractViolationError: If the graph is disconnected, tw(G) > k, or a
            constructed family member is not a decomposition of its torso.
        DomainError: If `improved` is not on the vertices of the graph.
    """
    settings = settings or Settings()
    if len(components(graph)) > 1:
        raise ContractViolationError("invariant_nested_decomposition", "the graph is disconnected")
    if improved is None:
        improved = improve(graph, k, settings)
    elif set(improved.vertices) != set(graph.vertices):
        raise DomainError("invariant_nested_decomposition", "improved graph has other vertices")
    if base is None:
        base = clique_free_decomposition(improved, k)

    families: dict[NodeId, tuple[RootedTreeDecomposition, ...]] = {}
    sizes: dict[NodeId, int] = {}
    for node in reversed(base.preorder()):
        bag = base.bags[node]
        if len(bag) <= k + 1:
            family = (RootedTreeDecomposition.single_bag(bag),)
        else:
            local = improved.induced_subgraph(bag)
            pairs = _anchor_pairs(improved, base, node, sizes.__getitem__)
            family = tuple(atom_bounded_decomposition(local, pair, k, settings) for pair in pairs)
        families[node] = family
        own = 1 + max(d.size + 1 for d in family)
        sizes[node] = own + sum(sizes[c] for c in base.children(node))

    nested = NestedDecomposition(graph=improved, base=base, families=families)
    problems = nested_violations(nested)
    if problems:
        raise ContractViolationError("invariant_nested_decomposition", problems[0])

    bounded = is_p_bounded(nested, pbound_polynomial(k))
    if not bounded:
        logger.warning("nested decomposition of %d vertices is not p-bounded", graph.order)
    logger.debug(
        "nested decomposition: %d bags, size %d, width %d", base.size, nested.size, nested.width
    )
    return nested.model_copy(
        update={
            "metadata": {
                "k": k,
                "k_prime": nested.width,
                "size": nested.size,
                "p_bounded": bounded,
            }
        }
    )
