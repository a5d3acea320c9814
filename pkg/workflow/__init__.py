"""Workflow layer - LangGraph orchestration."""
from workflow.canon_graph import CanonGraphBuilder

__all__ = ["CanonGraphBuilder"]
