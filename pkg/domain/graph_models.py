"""Colored graph models for the twcanon pipeline."""
import math
from collections.abc import Iterable, Mapping

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from domain.exceptions import DomainError

# Colors reserved by the pipeline.
DIAGONAL_COLOR = -1
NON_EDGE_COLOR = 0
EDGE_COLOR = 1
IMPROVEMENT_COLOR = 2
MARKER_COLOR = -2

INFINITY = math.inf

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Normalized key of the unordered pair {u, v}."""
    return (u, v) if u < v else (v, u)


class ColoredGraph(BaseModel):
    """
    A finite simple undirected graph with integer edge colors.

    The vertex tuple fixes the input ordering; it is used for tie-breaking
    only and never influences isomorphism-invariant results.
    """

    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...] = Field(default=(), description="Vertex identifiers in input order")
    edge_colors: dict[Edge, int] = Field(
        default_factory=dict, description="Color of every edge, keyed by the normalized pair"
    )

    _adjacency: dict[int, frozenset[int]] = PrivateAttr(default_factory=dict)
    _index: dict[int, int] = PrivateAttr(default_factory=dict)
    _nx: nx.Graph | None = PrivateAttr(default=None)

    @model_validator(mode="before")
    @classmethod
    def _normalize_edges(cls, data):
        if isinstance(data, dict) and data.get("edge_colors"):
            normalized: dict[Edge, int] = {}
            for (u, v), color in dict(data["edge_colors"]).items():
                normalized[edge_key(int(u), int(v))] = int(color)
            data = {**data, "edge_colors": normalized}
        return data

    @model_validator(mode="after")
    def _check_simple(self) -> "ColoredGraph":
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        if any(v < 0 for v in self.vertices):
            raise ValueError("vertex identifiers must be non-negative")
        for (u, v), color in self.edge_colors.items():
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in seen or v not in seen:
                raise ValueError(f"edge {(u, v)} references an unknown vertex")
            if color < 1:
                raise ValueError(f"edge {(u, v)} has reserved color {color}")
        return self

    def model_post_init(self, __context) -> None:
        neighbors: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edge_colors:
            neighbors[u].add(v)
            neighbors[v].add(u)
        self._adjacency = {v: frozenset(ns) for v, ns in neighbors.items()}
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edge_colors == other.edge_colors

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edge_colors.items())))

    # === Construction ===

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]] = (),
        colors: Mapping[tuple[int, int], int] | None = None,
    ) -> "ColoredGraph":
        """Build a graph whose edges get color 1 unless `colors` says otherwise."""
        colors = {edge_key(*e): c for e, c in (colors or {}).items()}
        edge_colors = {}
        for u, v in edges:
            key = edge_key(u, v)
            edge_colors[key] = colors.get(key, 1)
        return cls(vertices=tuple(vertices), edge_colors=edge_colors)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, color_attr: str = "color") -> "ColoredGraph":
        return cls(
            vertices=tuple(graph.nodes),
            edge_colors={edge_key(u, v): int(d.get(color_attr, 1)) for u, v, d in graph.edges(data=True)},
        )

    def induced_subgraph(self, keep: Iterable[int]) -> "ColoredGraph":
        """G[keep], preserving the input order of the kept vertices."""
        keep = set(keep)
        self.require_vertices(keep)
        return ColoredGraph(
            vertices=tuple(v for v in self.vertices if v in keep),
            edge_colors={e: c for e, c in self.edge_colors.items() if e[0] in keep and e[1] in keep},
        )

    def with_edges(self, extra: Mapping[Edge, int]) -> "ColoredGraph":
        """A copy with the given edges added (or recolored)."""
        edge_colors = dict(self.edge_colors)
        for (u, v), color in extra.items():
            edge_colors[edge_key(u, v)] = color
        return ColoredGraph(vertices=self.vertices, edge_colors=edge_colors)

    def recolored(self, mapping: Mapping[int, int]) -> "ColoredGraph":
        """A copy whose edge colors are passed through `mapping` (missing colors kept)."""
        return ColoredGraph(
            vertices=self.vertices,
            edge_colors={e: mapping.get(c, c) for e, c in self.edge_colors.items()},
        )

    def relabel(self, mapping: Mapping[int, int]) -> "ColoredGraph":
        """
        π(G) for a bijection π given as a mapping.

        The relabeled graph lists its vertices in increasing order, as a freshly
        parsed file would.
        """
        if set(mapping) != set(self.vertices) or len(set(mapping.values())) != len(mapping):
            raise DomainError("relabel", "mapping is not a bijection on V(G)")
        return ColoredGraph(
            vertices=tuple(sorted(mapping[v] for v in self.vertices)),
            edge_colors={edge_key(mapping[u], mapping[v]): c for (u, v), c in self.edge_colors.items()},
        )

    # === Queries ===

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[Edge]:
        return sorted(self.edge_colors)

    def has_vertex(self, v: int) -> bool:
        return v in self._adjacency

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge_key(u, v) in self.edge_colors

    def neighbors(self, v: int) -> frozenset[int]:
        self.require_vertices((v,))
        return self._adjacency[v]

    def neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """N(S): vertices outside S adjacent to some vertex of S."""
        inside = set(vertices)
        out: set[int] = set()
        for v in inside:
            out |= self._adjacency[v]
        return frozenset(out - inside)

    def vertex_index(self, v: int) -> int:
        self.require_vertices((v,))
        return self._index[v]

    def color(self, u: int, v: int) -> int:
        """col_G(u, v): -1 on the diagonal, the edge color on edges, 0 otherwise."""
        self.require_vertices((u, v))
        if u == v:
            return DIAGONAL_COLOR
        return self.edge_colors.get(edge_key(u, v), NON_EDGE_COLOR)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        members = list(vertices)
        self.require_vertices(members)
        return all(
            members[j] in self._adjacency[members[i]]
            for i in range(len(members))
            for j in range(i + 1, len(members))
        )

    def non_edges(self, vertices: Iterable[int] | None = None) -> list[Edge]:
        """Sorted non-adjacent pairs inside `vertices` (default: all of V)."""
        members = sorted(self.vertices if vertices is None else set(vertices))
        return [
            (members[i], members[j])
            for i in range(len(members))
            for j in range(i + 1, len(members))
            if members[j] not in self._adjacency[members[i]]
        ]

    def to_networkx(self) -> nx.Graph:
        """The underlying networkx graph (cached; treat as read-only)."""
        if self._nx is None:
            graph = nx.Graph()
            graph.add_nodes_from(self.vertices)
            graph.add_edges_from((u, v, {"color": c}) for (u, v), c in self.edge_colors.items())
            self._nx = graph
        return self._nx

    def require_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if v not in self._adjacency:
                raise DomainError("graph", f"unknown vertex {v!r}", vertex=v)


class Separation(BaseModel):
    """A separation (A, B): A ∪ B = V(G) and no edge between A \\ B and B \\ A."""

    model_config = ConfigDict(frozen=True)

    a_side: frozenset[int]
    b_side: frozenset[int]

    @property
    def separator(self) -> frozenset[int]:
        return self.a_side & self.b_side

    def is_valid_for(self, graph: ColoredGraph) -> bool:
        if self.a_side | self.b_side != set(graph.vertices):
            return False
        left = self.a_side - self.b_side
        right = self.b_side - self.a_side
        return not any((u in left and v in right) or (u in right and v in left) for u, v in graph.edge_colors)
