"""Plain edge-list codec: an "n m" header followed by m lines "u v [color]", 0-based."""
from domain.exceptions import ParseError
from domain.graph_models import EDGE_COLOR, ColoredGraph, edge_key
from ports.codec import GraphCodecPort


class EdgeListCodec(GraphCodecPort):
    """
    Adapter for the edge-list format.

    Blank lines and lines starting with '#' are ignored. A third column gives
    the edge color (a positive integer, default 1).
    """

    @property
    def format_name(self) -> str:
        return "edgelist"

    @staticmethod
    def _rows(text: str) -> list[tuple[int, list[str]]]:
        return [
            (number, stripped.split())
            for number, line in enumerate(text.splitlines(), start=1)
            if (stripped := line.strip()) and not stripped.startswith("#")
        ]

    @staticmethod
    def _ints(row: list[str], number: int) -> list[int]:
        values = []
        for offset, token in enumerate(row):
            try:
                values.append(int(token))
            except ValueError:
                raise ParseError("edgelist", f"{token!r} is not an integer", line=number, offset=offset) from None
        return values

    def sniff(self, text: str) -> bool:
        rows = self._rows(text)
        return bool(rows) and len(rows[0][1]) == 2 and all(t.lstrip("-").isdigit() for t in rows[0][1])

    def parse(self, text: str) -> ColoredGraph:
        rows = self._rows(text)
        if not rows:
            raise ParseError("edgelist", "missing 'n m' header")
        number, header = rows[0]
        if len(header) != 2:
            raise ParseError("edgelist", "header must be 'n m'", line=number)
        n, m = self._ints(header, number)
        if n < 0 or m < 0:
            raise ParseError("edgelist", "n and m must be non-negative", line=number)
        if len(rows) - 1 != m:
            raise ParseError("edgelist", f"header announces {m} edges, found {len(rows) - 1}", line=number)

        colors: dict[tuple[int, int], int] = {}
        for number, row in rows[1:]:
            if len(row) not in (2, 3):
                raise ParseError("edgelist", "edge lines are 'u v' or 'u v color'", line=number)
            values = self._ints(row, number)
            u, v = values[0], values[1]
            color = values[2] if len(values) == 3 else EDGE_COLOR
            for offset, w in enumerate((u, v)):
                if not 0 <= w < n:
                    raise ParseError("edgelist", f"vertex {w} outside 0..{n - 1}", line=number, offset=offset)
            if u == v:
                raise ParseError("edgelist", "self-loops are not allowed", line=number)
            if color < 1:
                raise ParseError("edgelist", "edge colors must be positive", line=number, offset=2)
            key = edge_key(u, v)
            if key in colors:
                raise ParseError("edgelist", f"duplicate edge {key}", line=number)
            colors[key] = color
        return ColoredGraph(vertices=tuple(range(n)), edge_colors=colors)

    def emit(self, graph: ColoredGraph) -> str:
        position = {v: i for i, v in enumerate(graph.vertices)}
        lines = [f"{graph.order} {len(graph.edge_colors)}"]
        renumbered = sorted((edge_key(position[a], position[b]), c) for (a, b), c in graph.edge_colors.items())
        for (u, v), c in renumbered:
            lines.append(f"{u} {v}" if c == EDGE_COLOR else f"{u} {v} {c}")
        return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> ColoredGraph:
    return EdgeListCodec().parse(text)


def emit_edgelist(graph: ColoredGraph) -> str:
    return EdgeListCodec().emit(graph)
