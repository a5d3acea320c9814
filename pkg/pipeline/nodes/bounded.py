"""Bounded Decomposer Node - anchored bounded-width decompositions of the large atoms."""
import logging
from typing import Any

from config.settings import Settings
from domain.decomposition_models import RootedTreeDecomposition
from domain.graph_models import ColoredGraph
from engine.atom_decomp import atom_bounded_decomposition
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class BoundedDecomposerNode:
    """
    For every atom bag with more than k+1 vertices, decomposes the atom
    anchored at its first non-edge in input order.
    """

    def __init__(self, settings: Settings):
        self.settings = settings

    def _decompose(self, graph: ColoredGraph, base: RootedTreeDecomposition, k: int) -> list[RootedTreeDecomposition]:
        out = []
        for node in base.preorder():
            bag = base.bags[node]
            if len(bag) <= k + 1:
                continue
            local = graph.induced_subgraph(bag)
            pairs = local.non_edges()
            if not pairs:
                continue
            anchor = min(pairs, key=lambda p: (local.vertex_index(p[0]), local.vertex_index(p[1])))
            out.append(atom_bounded_decomposition(local, anchor, k, self.settings))
        return out

    def __call__(self, state: CanonState) -> dict[str, Any]:
        k = state["k"]
        bounded = [
            self._decompose(graph, base, k) for graph, base in zip(state["improved"], state["clique_free"])
        ]
        count = sum(map(len, bounded))
        retries = sum(d.metadata.get("retries", 0) for part in bounded for d in part)
        logger.debug("bounded decompositions: %d, threshold retries %d", count, retries)
        return {
            "bounded": bounded,
            "last_stage": "bounded",
            "audit_feedback": [f"Bounded: {count} atom decomposition(s), {retries} threshold retries"],
        }
