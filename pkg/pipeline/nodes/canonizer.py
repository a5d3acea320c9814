"""Canonizer Node - canon and canonical labeling of the whole graph."""
from typing import Any

from config.settings import Settings
from engine.canonizer import canon
from pipeline.state import CanonState


class CanonizerNode:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, state: CanonState) -> dict[str, Any]:
        result = canon(state["graph"], state["k"], self.settings, nested=state["nested"])
        return {
            "canon": result,
            "last_stage": "canon",
            "audit_feedback": [f"Canonizer: canon of order {len(result.order)}"],
        }
