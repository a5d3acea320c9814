"""Pipeline layer - staged workflow state and nodes."""
from pipeline.state import CanonState, create_initial_state

__all__ = ["CanonState", "create_initial_state"]
