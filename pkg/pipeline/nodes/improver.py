"""Improver Node - adds improvement edges per component."""
import logging
from typing import Any

from config.settings import Settings
from engine.treedec import improve
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class ImproverNode:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, state: CanonState) -> dict[str, Any]:
        k = state["k"]
        improved = [improve(part, k, self.settings) for part in state["components"]]
        added = sum(len(after.edge_colors) - len(before.edge_colors) for before, after in zip(state["components"], improved))
        logger.debug("improvement added %d edges in total", added)
        return {
            "improved": improved,
            "last_stage": "improve",
            "audit_feedback": [f"Improver: {added} improvement edge(s)"],
        }
