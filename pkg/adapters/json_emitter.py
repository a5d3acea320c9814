"""JSON documents for decompositions and isomorphism verdicts."""
from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel, Field, TypeAdapter

from domain.decomposition_models import NestedDecomposition, NodeId, RootedTreeDecomposition
from domain.exceptions import AdapterError
from domain.results import CanonResult, IsomorphismResult
from ports.emitter import ResultEmitterPort


class DecompositionDocument(BaseModel):
    """
    Serialized rooted decomposition.

    Nodes are renamed "0", "1", ... in preorder; `labels` keeps the internal
    node identifier of each. `families` is present for nested decompositions
    only and maps a node to the documents of its family members.
    """

    root: str
    nodes: list[str]
    parent: dict[str, str]
    bags: dict[str, list[int]]
    labels: dict[str, str]
    anchor: list[int] | None = None
    families: dict[str, list["DecompositionDocument"]] | None = None
    metadata: dict[str, Any] = Field(default_factory=dict)


_DOCUMENTS = TypeAdapter(list[DecompositionDocument])


class VerdictDocument(BaseModel):
    isomorphic: bool
    witness: dict[str, int] | None = None


def _plain_document(decomposition: RootedTreeDecomposition) -> tuple[DecompositionDocument, dict[NodeId, str]]:
    names = {node: str(i) for i, node in enumerate(decomposition.preorder())}
    document = DecompositionDocument(
        root=names[decomposition.root],
        nodes=list(names.values()),
        parent={names[c]: names[p] for c, p in decomposition.parent.items()},
        bags={names[n]: sorted(decomposition.bags[n]) for n in decomposition.preorder()},
        labels={names[n]: repr(n) for n in decomposition.preorder()},
        anchor=list(decomposition.anchor) if decomposition.anchor is not None else None,
        metadata=dict(decomposition.metadata),
    )
    return document, names


def decomposition_document(decomposition: RootedTreeDecomposition | NestedDecomposition) -> DecompositionDocument:
    if isinstance(decomposition, RootedTreeDecomposition):
        return _plain_document(decomposition)[0]
    document, names = _plain_document(decomposition.base)
    families = {
        names[node]: [_plain_document(member)[0] for member in decomposition.family(node)]
        for node in decomposition.base.preorder()
    }
    metadata = {"size": decomposition.size, "width": decomposition.width, **decomposition.metadata}
    return document.model_copy(update={"families": families, "metadata": metadata})


class JsonResultEmitter(ResultEmitterPort):
    """Adapter rendering results through pydantic JSON serialization."""

    def __init__(self, indent: int | None = 2):
        self.indent = indent

    def emit_decomposition(self, decomposition: RootedTreeDecomposition | NestedDecomposition) -> str:
        try:
            return decomposition_document(decomposition).model_dump_json(indent=self.indent, exclude_none=True)
        except Exception as e:
            raise AdapterError("JsonResultEmitter", "emit_decomposition", e)

    def emit_decompositions(self, decompositions: Sequence[RootedTreeDecomposition | NestedDecomposition]) -> str:
        try:
            documents = [decomposition_document(d) for d in decompositions]
            return _DOCUMENTS.dump_json(documents, indent=self.indent, exclude_none=True).decode()
        except Exception as e:
            raise AdapterError("JsonResultEmitter", "emit_decompositions", e)

    def emit_canon(self, result: CanonResult) -> str:
        return result.to_text()

    def emit_isomorphism(self, result: IsomorphismResult) -> str:
        witness = None if result.witness is None else {str(v): w for v, w in sorted(result.witness.items())}
        return VerdictDocument(isomorphic=result.isomorphic, witness=witness).model_dump_json(
            indent=self.indent, exclude_none=True
        )


def emit_decomposition_json(decomposition: RootedTreeDecomposition | NestedDecomposition) -> str:
    return JsonResultEmitter().emit_decomposition(decomposition)


def emit_canon(result: CanonResult) -> str:
    return JsonResultEmitter().emit_canon(result)
