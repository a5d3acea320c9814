"""Connectivity, components and the leftmost minimum separator."""
import logging
from collections import deque
from collections.abc import Iterable

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from domain.exceptions import DomainError
from domain.graph_models import INFINITY, ColoredGraph, Separation

logger = logging.getLogger(__name__)

_SOURCE = ("terminal", "source")
_SINK = ("terminal", "sink")


def color(graph: ColoredGraph, u: int, v: int) -> int:
    return graph.color(u, v)


def is_clique(graph: ColoredGraph, vertices: Iterable[int]) -> bool:
    return graph.is_clique(vertices)


def components(graph: ColoredGraph, removed: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Connected components of G − removed, each sorted, ordered by smallest vertex."""
    removed = set(removed)
    unknown = removed - set(graph.vertices)
    if unknown:
        raise DomainError("components", f"removed vertices {sorted(unknown)} are not in the graph")
    keep = [v for v in graph.vertices if v not in removed]
    parts = nx.connected_components(graph.to_networkx().subgraph(keep))
    return sorted((tuple(sorted(part)) for part in parts), key=lambda part: part[0])


def _split_network(
    graph: ColoredGraph,
    enter_out: Iterable[int] = (),
    enter_in: Iterable[int] = (),
    leave_in: Iterable[int] = (),
    leave_out: Iterable[int] = (),
) -> nx.DiGraph:
    """
    Vertex-split flow network: every vertex v becomes (v,"in") -> (v,"out") with
    capacity 1, every edge two uncapacitated arcs out -> in. Terminal arcs are
    uncapacitated as well.
    """
    net = nx.DiGraph()
    for v in graph.vertices:
        net.add_edge((v, "in"), (v, "out"), capacity=1)
    for u, v in graph.edge_colors:
        net.add_edge((u, "out"), (v, "in"))
        net.add_edge((v, "out"), (u, "in"))
    for v in enter_out:
        net.add_edge(_SOURCE, (v, "out"))
    for v in enter_in:
        net.add_edge(_SOURCE, (v, "in"))
    for v in leave_in:
        net.add_edge((v, "in"), _SINK)
    for v in leave_out:
        net.add_edge((v, "out"), _SINK)
    return net


def _residual_reach(residual: nx.DiGraph) -> frozenset:
    """Nodes reachable from the source over arcs with spare residual capacity."""
    seen = {_SOURCE}
    queue = deque([_SOURCE])
    while queue:
        node = queue.popleft()
        for succ, arc in residual[node].items():
            if succ not in seen and arc["capacity"] - arc["flow"] > 0:
                seen.add(succ)
                queue.append(succ)
    return frozenset(seen)


def _leftmost_cut(graph: ColoredGraph, xs: frozenset[int], ys: frozenset[int]) -> tuple[int, frozenset]:
    """
    Minimum cut between X and Y whose source side is inclusion-minimal.

    Vertices of X\\Y and Y\\X are terminals and X∩Y is always cut. When an edge
    joins the two terminal sides the terminals become cuttable as well. The
    source side is what the source still reaches in the residual network of a
    maximum flow.
    """
    both = xs & ys
    net = _split_network(graph, enter_out=xs - ys, enter_in=both, leave_in=ys - xs, leave_out=both)
    try:
        residual = edmonds_karp(net, _SOURCE, _SINK)
    except nx.NetworkXUnbounded:
        logger.debug("terminal sides %s and %s touch; cutting terminals", sorted(xs), sorted(ys))
        net = _split_network(graph, enter_in=xs, leave_out=ys)
        residual = edmonds_karp(net, _SOURCE, _SINK)
    return int(residual.graph["flow_value"]), _residual_reach(residual)


def leftmost_separation(graph: ColoredGraph, xs: Iterable[int], ys: Iterable[int]) -> Separation:
    """The minimum separation (A, B) with X on the A-side, Y on the B-side and A inclusion-minimal."""
    xs, ys = frozenset(xs), frozenset(ys)
    vertices = frozenset(graph.vertices)
    if not xs or not ys:
        return Separation(a_side=xs, b_side=vertices)
    _, reached = _leftmost_cut(graph, xs, ys)
    a_side = frozenset(v for v in graph.vertices if (v, "in") in reached or (v, "out") in reached)
    # cut vertices: entered from the source side, exit copy unreachable
    separator = frozenset(v for v in a_side if (v, "in") in reached and (v, "out") not in reached)
    return Separation(a_side=a_side, b_side=(vertices - a_side) | separator)


def leftmost_min_separator(graph: ColoredGraph, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    """sep(X, Y): the separator of the leftmost minimum separation."""
    return leftmost_separation(graph, xs, ys).separator


def connectivity(graph: ColoredGraph, x: int, y: int) -> int | float:
    """κ(x, y); INFINITY for adjacent vertices."""
    if x == y:
        raise DomainError("connectivity", "endpoints must differ", vertex=x)
    if graph.has_edge(x, y):
        return INFINITY
    value, _ = _leftmost_cut(graph, frozenset((x,)), frozenset((y,)))
    return value


def connectivity_sets(graph: ColoredGraph, xs: Iterable[int], ys: Iterable[int]) -> int:
    """κ(X, Y): size of a smallest separator with X on one side and Y on the other."""
    xs, ys = frozenset(xs), frozenset(ys)
    if not xs or not ys:
        raise DomainError("connectivity_sets", "both vertex sets must be nonempty")
    graph.require_vertices(xs | ys)
    value, _ = _leftmost_cut(graph, xs, ys)
    return value
