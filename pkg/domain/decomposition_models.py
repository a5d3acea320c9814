"""Decomposition models: tree decompositions, graphs with interface, nested decompositions."""
from collections.abc import Hashable, Iterable, Mapping
from typing import Any, Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from domain.exceptions import ContractViolationError, DomainError
from domain.graph_models import ColoredGraph

NodeId = Hashable


class TreeDecomposition(BaseModel):
    """An unrooted tree decomposition: a tree on `nodes` plus a bag per node."""

    model_config = ConfigDict(frozen=True)

    nodes: tuple[NodeId, ...]
    edges: tuple[tuple[NodeId, NodeId], ...] = ()
    bags: dict[NodeId, frozenset[int]]

    @model_validator(mode="after")
    def _check_tree(self) -> "TreeDecomposition":
        if set(self.bags) != set(self.nodes) or len(set(self.nodes)) != len(self.nodes):
            raise ValueError("every node needs exactly one bag")
        tree = nx.Graph()
        tree.add_nodes_from(self.nodes)
        tree.add_edges_from(self.edges)
        if tree.number_of_nodes() != len(self.nodes):
            raise ValueError("edges reference unknown nodes")
        if self.nodes and not nx.is_tree(tree):
            raise ValueError("nodes and edges do not form a tree")
        return self

    def to_networkx(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(self.nodes)
        tree.add_edges_from(self.edges)
        return tree


class RootedTreeDecomposition(BaseModel):
    """
    A rooted tree decomposition (T, B).

    `parent` maps every non-root node to its parent. `anchor` records the
    distinguished non-edge a decomposition was built around, if any.
    """

    model_config = ConfigDict(frozen=True)

    nodes: tuple[NodeId, ...]
    parent: dict[NodeId, NodeId] = Field(default_factory=dict)
    bags: dict[NodeId, frozenset[int]]
    root: NodeId
    anchor: tuple[int, int] | None = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    _children: dict[NodeId, tuple[NodeId, ...]] = PrivateAttr(default_factory=dict)
    _depth: dict[NodeId, int] = PrivateAttr(default_factory=dict)
    _preorder: tuple[NodeId, ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_rooted_tree(self) -> "RootedTreeDecomposition":
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise ValueError("duplicate node identifiers")
        if self.root not in node_set:
            raise ValueError("root is not a node")
        if self.root in self.parent:
            raise ValueError("root must not have a parent")
        if set(self.bags) != node_set:
            raise ValueError("every node needs exactly one bag")
        if set(self.parent) != node_set - {self.root}:
            raise ValueError("every non-root node needs a parent")
        if any(p not in node_set for p in self.parent.values()):
            raise ValueError("parent map references unknown nodes")
        return self

    def model_post_init(self, __context) -> None:
        children: dict[NodeId, list[NodeId]] = {n: [] for n in self.nodes}
        for child in self.nodes:
            if child in self.parent:
                children[self.parent[child]].append(child)
        self._children = {n: tuple(cs) for n, cs in children.items()}

        depth = {self.root: 0}
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            for child in reversed(self._children[node]):
                depth[child] = depth[node] + 1
                stack.append(child)
        if len(order) != len(self.nodes):
            raise ValueError("parent map contains a cycle")
        self._depth = depth
        self._preorder = tuple(order)

    # === Factories ===

    @classmethod
    def single_bag(cls, bag: Iterable[int], node: NodeId = "bag") -> "RootedTreeDecomposition":
        return cls(nodes=(node,), bags={node: frozenset(bag)}, root=node)

    # === Structure ===

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def _require(self, node: NodeId) -> None:
        if node not in self.bags:
            raise DomainError("tree decomposition", f"unknown node {node!r}", node=node)

    def children(self, node: NodeId) -> tuple[NodeId, ...]:
        self._require(node)
        return self._children[node]

    def depth(self, node: NodeId) -> int:
        self._require(node)
        return self._depth[node]

    def preorder(self) -> tuple[NodeId, ...]:
        return self._preorder

    def neighbors(self, node: NodeId) -> tuple[NodeId, ...]:
        self._require(node)
        up = (self.parent[node],) if node in self.parent else ()
        return up + self._children[node]

    def tree_edges(self) -> list[tuple[NodeId, NodeId]]:
        return [(p, c) for c, p in self.parent.items()]

    def adhesion(self, node: NodeId, other: NodeId) -> frozenset[int]:
        """B_n ∩ B_m for a tree edge {n, m}."""
        self._require(node)
        self._require(other)
        if self.parent.get(node) != other and self.parent.get(other) != node:
            raise DomainError("adhesion", f"{node!r} and {other!r} are not adjacent", node=node)
        return self.bags[node] & self.bags[other]

    def subtree(self, node: NodeId) -> list[NodeId]:
        self._require(node)
        out = []
        stack = [node]
        while stack:
            current = stack.pop()
            out.append(current)
            stack.extend(reversed(self._children[current]))
        return out

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags.values()) if self.bags else frozenset()

    def highest_node_containing(self, vertices: Iterable[int]) -> NodeId | None:
        """The node closest to the root whose bag contains `vertices`."""
        target = frozenset(vertices)
        best: NodeId | None = None
        for node in self._preorder:
            if target <= self.bags[node]:
                if best is None or self._depth[node] < self._depth[best]:
                    best = node
                elif self._depth[node] == self._depth[best]:
                    raise ContractViolationError(
                        "highest_node_containing",
                        "bags containing the set do not form a subtree",
                        node=node,
                    )
        return best

    def rerooted(self, new_root: NodeId) -> dict[NodeId, NodeId]:
        """The parent map obtained by rooting the same tree at `new_root`."""
        self._require(new_root)
        parent: dict[NodeId, NodeId] = {}
        seen = {new_root}
        stack = [new_root]
        while stack:
            node = stack.pop()
            for other in self.neighbors(node):
                if other not in seen:
                    seen.add(other)
                    parent[other] = node
                    stack.append(other)
        return parent

    # === Comparison helpers ===

    def signature(self, node: NodeId | None = None) -> tuple:
        """Label-free recursive form (sorted bag, sorted child signatures)."""
        node = self.root if node is None else node
        return (
            tuple(sorted(self.bags[node])),
            tuple(sorted(self.signature(c) for c in self._children[node])),
        )

    def relabel(self, mapping: Mapping[int, int]) -> "RootedTreeDecomposition":
        anchor = None
        if self.anchor is not None:
            a, b = mapping[self.anchor[0]], mapping[self.anchor[1]]
            anchor = (min(a, b), max(a, b))
        return self.model_copy(
            update={
                "bags": {n: frozenset(mapping[v] for v in bag) for n, bag in self.bags.items()},
                "anchor": anchor,
            }
        )


class ValidationReport(BaseModel):
    """Outcome of checking the tree decomposition properties."""

    valid: bool
    violated: Literal["vertex", "connectedness", "covering"] | None = None
    witness: Any = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


class AtomFamily(BaseModel):
    """The vertex sets of all maximal c-atoms of a graph."""

    model_config = ConfigDict(frozen=True)

    c: int = Field(..., ge=0)
    atoms: tuple[frozenset[int], ...] = ()

    def violations(self, graph: ColoredGraph) -> list[str]:
        """Broken type invariants (empty when the family is well formed)."""
        problems = []
        for atom in self.atoms:
            if not atom or not nx.is_connected(graph.to_networkx().subgraph(atom)):
                problems.append(f"atom {sorted(atom)} is not connected")
        for i, first in enumerate(self.atoms):
            for second in self.atoms[i + 1:]:
                common = first & second
                if len(common) > self.c or not graph.is_clique(common):
                    problems.append(f"atoms {sorted(first)} and {sorted(second)} meet in {sorted(common)}")
        return problems


class GraphWithInterface(BaseModel):
    """A pair (H, I): H − I is connected and I = N_H(V(H) \\ I)."""

    model_config = ConfigDict(frozen=True)

    graph: ColoredGraph
    interface: frozenset[int]

    @property
    def interior(self) -> frozenset[int]:
        return frozenset(self.graph.vertices) - self.interface

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.interior)), tuple(sorted(self.interface))

    @classmethod
    def checked(cls, graph: ColoredGraph, interface: Iterable[int], operation: str) -> "GraphWithInterface":
        """Build the pair and enforce both type invariants."""
        gi = cls(graph=graph, interface=frozenset(interface))
        if not gi.interface <= set(graph.vertices):
            raise ContractViolationError(operation, "interface is not inside the graph", node=gi.key)
        interior = gi.interior
        if interior:
            if not nx.is_connected(graph.to_networkx().subgraph(interior)):
                raise ContractViolationError(operation, "interior is not connected", node=gi.key)
            if graph.neighborhood(interior) != gi.interface:
                raise ContractViolationError(operation, "interface is not the neighborhood of the interior", node=gi.key)
        return gi


class DescriptorDecomposition(BaseModel):
    """A rooted directed tree of graphs with interface."""

    model_config = ConfigDict(frozen=True)

    nodes: tuple[NodeId, ...]
    children: dict[NodeId, tuple[NodeId, ...]]
    labels: dict[NodeId, GraphWithInterface]
    root: NodeId
    metadata: dict[str, Any] = Field(default_factory=dict)

    def violations(self) -> list[str]:
        """Failures of the four descriptor properties, first one first."""
        problems = []
        for node in self.nodes:
            label = self.labels[node]
            outer = set(label.graph.vertices)
            interior = label.interior
            covered = {e for e in label.graph.edge_colors if e[0] in label.interface and e[1] in label.interface}
            seen_interior: set[int] = set()
            for child in self.children.get(node, ()):
                sub = self.labels[child]
                inner = set(sub.graph.vertices)
                if not inner <= outer or (inner == outer and sub.interface <= label.interface):
                    problems.append(f"child {child!r} of {node!r} does not shrink")
                if not inner & interior:
                    problems.append(f"child {child!r} of {node!r} misses the interior")
                if seen_interior & sub.interior:
                    problems.append(f"interiors below {node!r} overlap")
                seen_interior |= sub.interior
                covered |= set(sub.graph.edge_colors)
            if self.children.get(node) and not set(label.graph.edge_colors) <= covered:
                problems.append(f"edges of {node!r} are not covered by its children")
        return problems


class NestedDecomposition(BaseModel):
    """
    A nested tree decomposition: a base decomposition of `graph` whose nodes
    carry families of decompositions refining their torsos.
    """

    model_config = ConfigDict(frozen=True)

    graph: ColoredGraph
    base: RootedTreeDecomposition
    families: dict[NodeId, tuple[RootedTreeDecomposition, ...]] = Field(default_factory=dict)
    metadata: dict[str, Any] = Field(default_factory=dict)

    _sizes: dict[NodeId, int] = PrivateAttr(default_factory=dict)
    _vertices: dict[NodeId, frozenset[int]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        sizes: dict[NodeId, int] = {}
        covered: dict[NodeId, frozenset[int]] = {}
        for node in reversed(self.base.preorder()):
            own = 1 + max((d.size + 1 for d in self.family(node)), default=0)
            children = self.base.children(node)
            sizes[node] = own + sum(sizes[c] for c in children)
            covered[node] = self.base.bags[node].union(*(covered[c] for c in children))
        self._sizes = sizes
        self._vertices = covered

    @property
    def root(self) -> NodeId:
        return self.base.root

    def family(self, node: NodeId) -> tuple[RootedTreeDecomposition, ...]:
        return self.families.get(node, ())

    @property
    def size(self) -> int:
        return self._sizes[self.root]

    def subtree_size(self, node: NodeId) -> int:
        return self._sizes[node]

    def subtree_vertices(self, node: NodeId) -> frozenset[int]:
        return self._vertices[node]

    def bag_width(self, node: NodeId) -> int:
        family = self.family(node)
        if not family:
            return len(self.base.bags[node]) - 1
        return max(d.width for d in family)

    @property
    def width(self) -> int:
        return max(self.bag_width(n) for n in self.base.nodes)

    def subdecomposition(self, node: NodeId) -> "NestedDecomposition":
        """D̄_n: the subtree at `node` with its families."""
        if node == self.root:
            return self
        keep = self.base.subtree(node)
        kept = set(keep)
        base = RootedTreeDecomposition(
            nodes=tuple(keep),
            parent={n: self.base.parent[n] for n in keep if n != node},
            bags={n: self.base.bags[n] for n in keep},
            root=node,
        )
        return NestedDecomposition(
            graph=self.graph,
            base=base,
            families={n: f for n, f in self.families.items() if n in kept},
        )

    def signature(self, node: NodeId | None = None) -> tuple:
        node = self.root if node is None else node
        return (
            tuple(sorted(self.base.bags[node])),
            tuple(sorted(d.signature() for d in self.family(node))),
            tuple(sorted(self.signature(c) for c in self.base.children(node))),
        )

    def relabel(self, mapping: Mapping[int, int]) -> "NestedDecomposition":
        """The same nested decomposition on the graph relabeled by a bijection."""
        return NestedDecomposition(
            graph=self.graph.relabel(mapping),
            base=self.base.relabel(mapping),
            families={n: tuple(d.relabel(mapping) for d in f) for n, f in self.families.items()},
            metadata=dict(self.metadata),
        )


class RootSet(BaseModel):
    """An (optionally ordered) root set M of a nested decomposition."""

    model_config = ConfigDict(frozen=True)

    vertices: frozenset[int]
    ordering: tuple[int, ...] | None = None

    @classmethod
    def ordered(cls, sequence: Iterable[int]) -> "RootSet":
        sequence = tuple(sequence)
        return cls(vertices=frozenset(sequence), ordering=sequence)

    @model_validator(mode="after")
    def _check_ordering(self) -> "RootSet":
        if self.ordering is not None and (
            len(set(self.ordering)) != len(self.ordering) or set(self.ordering) != self.vertices
        ):
            raise ValueError("ordering must enumerate the root set exactly once")
        return self
