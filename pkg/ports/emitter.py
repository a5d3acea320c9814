"""Abstract interface for rendering pipeline results."""
from abc import ABC, abstractmethod
from collections.abc import Sequence

from domain.decomposition_models import NestedDecomposition, RootedTreeDecomposition
from domain.results import CanonResult, IsomorphismResult


class ResultEmitterPort(ABC):
    """Port for turning results into text for standard output or files."""

    @abstractmethod
    def emit_decomposition(self, decomposition: RootedTreeDecomposition | NestedDecomposition) -> str:
        """
        Render a decomposition document.

        Args:
            decomposition: A plain or nested rooted decomposition

        Returns:
            Document with nodes, parent, bags, families and metadata
        """
        raise NotImplementedError

    @abstractmethod
    def emit_decompositions(self, decompositions: Sequence[RootedTreeDecomposition | NestedDecomposition]) -> str:
        """Render several decompositions (one per component) as one document."""
        raise NotImplementedError

    @abstractmethod
    def emit_canon(self, result: CanonResult) -> str:
        """Render the canon as a row-major signed-integer matrix."""
        raise NotImplementedError

    @abstractmethod
    def emit_isomorphism(self, result: IsomorphismResult) -> str:
        """Render an isomorphism verdict with its witness."""
        raise NotImplementedError
