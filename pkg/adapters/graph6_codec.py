"""graph6 codec backed by the networkx reader and writer."""
import networkx as nx

from domain.exceptions import AdapterError, ParseError
from domain.graph_models import ColoredGraph
from ports.codec import GraphCodecPort

HEADER = ">>graph6<<"


class Graph6Codec(GraphCodecPort):
    """
    Adapter for the bit-packed graph6 format.

    graph6 carries no colors: every edge is read with color 1, and colors are
    dropped on output.
    """

    @property
    def format_name(self) -> str:
        return "graph6"

    def _payload(self, text: str) -> tuple[str, int]:
        lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
        if not lines:
            raise ParseError("graph6", "no graph in input")
        if len(lines) > 1:
            raise ParseError("graph6", "expected exactly one graph", line=lines[1][0])
        number, payload = lines[0]
        if payload.startswith(HEADER):
            payload = payload[len(HEADER):]
        for offset, char in enumerate(payload):
            if not 63 <= ord(char) <= 126:
                raise ParseError("graph6", f"byte {char!r} outside 63..126", line=number, offset=offset)
        return payload, number

    def sniff(self, text: str) -> bool:
        try:
            self._payload(text)
        except ParseError:
            return False
        return True

    def parse(self, text: str) -> ColoredGraph:
        payload, number = self._payload(text)
        try:
            graph = nx.from_graph6_bytes(payload.encode("ascii"))
        except (nx.NetworkXError, ValueError, IndexError) as e:
            raise ParseError("graph6", str(e), line=number) from e
        return ColoredGraph.from_edges(range(graph.number_of_nodes()), graph.edges)

    def emit(self, graph: ColoredGraph) -> str:
        position = {v: i for i, v in enumerate(graph.vertices)}
        plain = nx.Graph()
        plain.add_nodes_from(range(graph.order))
        plain.add_edges_from((position[u], position[v]) for u, v in graph.edges)
        try:
            return nx.to_graph6_bytes(plain, header=False).decode("ascii").strip()
        except Exception as e:
            raise AdapterError("Graph6Codec", "emit", e)


def parse_graph6(text: str) -> ColoredGraph:
    return Graph6Codec().parse(text)


def emit_graph6(graph: ColoredGraph) -> str:
    return Graph6Codec().emit(graph)
