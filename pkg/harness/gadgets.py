"""Nested decompositions that show the ordering is only quasi-complete."""
from domain.decomposition_models import NestedDecomposition, RootedTreeDecomposition
from domain.graph_models import ColoredGraph


def edge_star(vertices: tuple[int, ...], edge: tuple[int, int]) -> RootedTreeDecomposition:
    """Star whose center bag is the edge and whose leaves hold one vertex each."""
    center = ("center", edge)
    nodes = [center] + [("leaf", u) for u in vertices]
    bags = {center: frozenset(edge)} | {("leaf", u): frozenset((u,)) for u in vertices}
    parent = {("leaf", u): center for u in vertices}
    return RootedTreeDecomposition(nodes=tuple(nodes), parent=parent, bags=bags, root=center, anchor=edge)


def edge_star_gadget(graph: ColoredGraph) -> tuple[ColoredGraph, NestedDecomposition]:
    """
    Hide the edges of G in the refinements of an edgeless graph.

    The returned graph has the vertices of G and no edges. Its nested
    decomposition is the single bag V(G), whose family holds one `edge_star`
    per edge of G (no family at all when G is edgeless). The ordering cannot
    see which pairs the stars sit on, so gadgets of non-isomorphic graphs with
    equal vertex and edge counts compare as incomparable.
    """
    edgeless = ColoredGraph(vertices=graph.vertices)
    root = ("bag", tuple(sorted(graph.vertices)))
    base = RootedTreeDecomposition.single_bag(graph.vertices, node=root)
    family = tuple(edge_star(graph.vertices, edge) for edge in graph.edges)
    families = {root: family} if family else {}
    return edgeless, NestedDecomposition(graph=edgeless, base=base, families=families)
