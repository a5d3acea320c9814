"""Nester Node - invariant nested decompositions per component."""
import logging
from typing import Any

from config.settings import Settings
from engine.nested import invariant_nested_decomposition
from pipeline.state import CanonState

logger = logging.getLogger(__name__)


class NesterNode:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, state: CanonState) -> dict[str, Any]:
        k = state["k"]
        nested = [
            invariant_nested_decomposition(part, k, self.settings, improved=improved, base=base)
            for part, improved, base in zip(state["components"], state["improved"], state["clique_free"])
        ]
        sizes = [n.size for n in nested]
        logger.debug("nested decomposition sizes: %s", sizes)
        return {
            "nested": nested,
            "last_stage": "nested",
            "audit_feedback": [f"Nester: sizes {sizes}"],
        }
