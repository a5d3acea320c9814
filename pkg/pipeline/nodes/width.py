"""Width Resolver Node - fixes k and splits the input into components."""
import logging
from typing import Any

from config.settings import Settings
from engine.canonizer import reserve_colors
from engine.graph_core import components
from engine.treedec import check_width_promise, treewidth_exact
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class WidthResolverNode:
    """
    Resolves the treewidth bound.

    A given k is checked against the graph (heuristic first, exact oracle
    when the graph is small enough). Without k the exact treewidth is used,
    which needs the graph to be within the oracle limit.
    """

    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, state: CanonState) -> dict[str, Any]:
        graph = state["graph"]
        k = state.get("k")
        if k is None:
            k = max(treewidth_exact(graph, self.settings), 0)
            feedback = f"Width: computed tw(G) = {k}"
        else:
            check_width_promise(graph, k, self.settings)
            feedback = f"Width: accepted k = {k}"
        logger.info(feedback)

        # colors >= 2 move up by one; 2 is left to improvement edges
        parts = [reserve_colors(graph.induced_subgraph(part)) for part in components(graph)]
        return {
            "k": k,
            "components": parts,
            "last_stage": "width",
            "audit_feedback": [feedback, f"Width: {len(parts)} component(s)"],
        }
