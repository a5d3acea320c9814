"""LangGraph state definitions for the canonization pipeline."""
from typing import Annotated, Literal, TypedDict

from domain.decomposition_models import NestedDecomposition, RootedTreeDecomposition
from domain.graph_models import ColoredGraph
from domain.results import CanonResult

Stage = Literal["atoms", "bounded", "nested", "canon"]


def merge_audit_feedback(existing: list[str], new: list[str]) -> list[str]:
    """Reducer function to append audit feedback."""
    return existing + new


def merge_timings(existing: dict[str, float], new: dict[str, float]) -> dict[str, float]:
    """Reducer for stage timings (later runs of a stage add up)."""
    merged = dict(existing)
    for stage, seconds in new.items():
        merged[stage] = merged.get(stage, 0.0) + seconds
    return merged


class CanonState(TypedDict):
    """
    The state flowing through the canonization workflow.
    Per-component lists are aligned with `components`.
    """

    # === Input ===
    graph: ColoredGraph
    k: int | None
    stage: Stage

    # === Stage outputs ===
    components: list[ColoredGraph]
    improved: list[ColoredGraph]
    clique_free: list[RootedTreeDecomposition]
    bounded: list[list[RootedTreeDecomposition]]
    nested: list[NestedDecomposition]
    canon: CanonResult | None

    # === Control ===
    last_stage: str | None
    audit_feedback: Annotated[list[str], merge_audit_feedback]
    stage_timings: Annotated[dict[str, float], merge_timings]
    error: str | None


def create_initial_state(graph: ColoredGraph, k: int | None = None, stage: Stage = "canon") -> CanonState:
    """
    Factory function to create a properly initialized CanonState.

    Args:
        graph: The input graph
        k: Treewidth bound, or None to compute it exactly
        stage: Where the run stops

    Returns:
        Initialized CanonState
    """
    return CanonState(
        graph=graph,
        k=k,
        stage=stage,
        components=[],
        improved=[],
        clique_free=[],
        bounded=[],
        nested=[],
        canon=None,
        last_stage=None,
        audit_feedback=[],
        stage_timings={},
        error=None,
    )
