"""Abstract interface for graph file formats."""
from abc import ABC, abstractmethod

from domain.graph_models import ColoredGraph


class GraphCodecPort(ABC):
    """
    Port for reading and writing graphs.
    Abstracts away graph6, plain edge lists, or any other encoding.
    """

    @abstractmethod
    def parse(self, text: str) -> ColoredGraph:
        """
        Decode one graph.

        Args:
            text: The file contents

        Returns:
            The graph on vertices 0..n-1 in file order

        Raises:
            ParseError: If the input is malformed
        """
        raise NotImplementedError

    @abstractmethod
    def emit(self, graph: ColoredGraph) -> str:
        """
        Encode one graph.

        Args:
            graph: The graph to encode; vertices are renumbered 0..n-1 in input order

        Returns:
            The encoded text
        """
        raise NotImplementedError

    @abstractmethod
    def sniff(self, text: str) -> bool:
        """Return True if the text looks like this format."""
        raise NotImplementedError

    @property
    @abstractmethod
    def format_name(self) -> str:
        """Return the format name (e.g., 'graph6', 'edgelist')."""
        raise NotImplementedError
