"""Staged canonization workflow using LangGraph."""
import logging
import time
from collections.abc import Callable

from langgraph.graph import END, START, StateGraph
from langgraph.types import Command

from config.settings import Settings
from domain.exceptions import TwCanonError
from pipeline.nodes import (
    AtomizerNode,
    AuditorNode,
    BoundedDecomposerNode,
    CanonizerNode,
    ImproverNode,
    NesterNode,
    WidthResolverNode,
)
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class CanonGraphBuilder:
    """
    Builder for the canonization workflow.

    The workflow runs the construction stage by stage:
    1. Width: resolve k, split into components
    2. Improver: add improvement edges
    3. Atomizer: clique-separator-free decomposition
    4. Bounded (stage "bounded" only): anchored decompositions of large atoms
    5. Nester: invariant nested decomposition
    6. Canonizer: canon and canonical labeling

    The auditor validates the output of steps 3 to 6 and stops the run once
    the requested stage is reached. Any library error routes to the error handler.
    """

    def __init__(self, settings: Settings):
        self.settings = settings

        # Initialize nodes
        self.width = WidthResolverNode(settings)
        self.improver = ImproverNode(settings)
        self.atomizer = AtomizerNode()
        self.bounded = BoundedDecomposerNode(settings)
        self.nester = NesterNode(settings)
        self.canonizer = CanonizerNode(settings)
        self.auditor = AuditorNode()

    def build(self):
        """
        Build and compile the LangGraph workflow.

        Returns:
            Compiled StateGraph ready for execution
        """
        workflow = StateGraph(CanonState)

        # === Add Nodes ===
        workflow.add_node("width", self._run_width)
        workflow.add_node("improver", self._run_improver)
        workflow.add_node("atomizer", self._run_atomizer)
        workflow.add_node("bounded", self._run_bounded)
        workflow.add_node("nester", self._run_nester)
        workflow.add_node("canonizer", self._run_canonizer)
        workflow.add_node("auditor", self._run_auditor)
        workflow.add_node("error_handler", self._handle_error)

        # === Define Edges ===
        # Routing happens through `Command(goto=...)` returned by the wrappers.
        workflow.add_edge(START, "width")
        workflow.add_edge("error_handler", END)

        return workflow.compile()

    # === Node Wrappers ===

    def _timed(self, name: str, node: Callable[[CanonState], dict], state: CanonState, goto: str) -> Command:
        started = time.perf_counter()
        try:
            result = node(state)
        except TwCanonError as e:
            logger.debug("%s failed: %s", name, e.message)
            return Command(update={"error": e.message}, goto="error_handler")
        result["stage_timings"] = {name: time.perf_counter() - started}
        return Command(update=result, goto=goto)

    def _run_width(self, state: CanonState) -> Command:
        return self._timed("width", self.width, state, "improver")

    def _run_improver(self, state: CanonState) -> Command:
        return self._timed("improver", self.improver, state, "atomizer")

    def _run_atomizer(self, state: CanonState) -> Command:
        return self._timed("atomizer", self.atomizer, state, "auditor")

    def _run_bounded(self, state: CanonState) -> Command:
        return self._timed("bounded", self.bounded, state, "auditor")

    def _run_nester(self, state: CanonState) -> Command:
        return self._timed("nester", self.nester, state, "auditor")

    def _run_canonizer(self, state: CanonState) -> Command:
        return self._timed("canonizer", self.canonizer, state, "auditor")

    def _run_auditor(self, state: CanonState) -> Command:
        """Run auditor and pick the next stage."""
        result = self.auditor(state)
        if state.get("error") or result.get("error"):
            return Command(update=result, goto="error_handler")
        return Command(update=result, goto=self._next_stage(state))

    @staticmethod
    def _next_stage(state: CanonState) -> str:
        last, wanted = state.get("last_stage"), state["stage"]
        if last == wanted:
            return END
        if last == "atoms":
            return "bounded" if wanted == "bounded" else "nester"
        if last == "nested":
            return "canonizer"
        return END

    def _handle_error(self, state: CanonState) -> dict:
        error = state.get("error", "unknown error")
        logger.info("run stopped: %s", error)
        return {"audit_feedback": [f"FATAL ERROR: {error}"]}
