"""Comparison and canonization result models."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from domain.graph_models import ColoredGraph


class CmpResult(str, Enum):
    """Outcome of a weak-ordering comparison."""

    LESS = "Less"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"

    def flip(self) -> "CmpResult":
        if self is CmpResult.LESS:
            return CmpResult.GREATER
        if self is CmpResult.GREATER:
            return CmpResult.LESS
        return self

    @classmethod
    def of(cls, left, right) -> "CmpResult":
        """Compare two values of a total order."""
        if left < right:
            return cls.LESS
        if right < left:
            return cls.GREATER
        return cls.INCOMPARABLE


class CanonResult(BaseModel):
    """A canon (color matrix in canonical order) with its canonical labeling."""

    model_config = ConfigDict(frozen=True)

    order: tuple[int, ...] = Field(..., description="Vertices in canonical order")
    labeling: dict[int, int] = Field(..., description="Vertex -> canonical position")
    matrix: tuple[tuple[int, ...], ...] = Field(..., description="Row-major color matrix")

    @property
    def encoding(self) -> tuple[int, ...]:
        return tuple(c for row in self.matrix for c in row)

    def same_canon(self, other: "CanonResult") -> bool:
        return self.matrix == other.matrix

    def to_text(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.matrix)

    def canon_graph(self) -> ColoredGraph:
        """The graph on 0..n-1 whose color matrix is the canon."""
        n = len(self.matrix)
        return ColoredGraph(
            vertices=tuple(range(n)),
            edge_colors={
                (i, j): self.matrix[i][j]
                for i in range(n)
                for j in range(i + 1, n)
                if self.matrix[i][j] > 0
            },
        )


class IsomorphismResult(BaseModel):
    """Isomorphism verdict with a verified witness when positive."""

    isomorphic: bool
    witness: dict[int, int] | None = None
