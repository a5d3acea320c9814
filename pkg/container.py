"""Dependency Injection Container - Wires up the application."""
import logging
from pathlib import Path

from config.settings import Settings
from domain.exceptions import AdapterError, ParseError, TwCanonError
from domain.graph_models import ColoredGraph
from pipeline.state import CanonState, Stage, create_initial_state
from ports.codec import GraphCodecPort
from ports.emitter import ResultEmitterPort
from workflow.canon_graph import CanonGraphBuilder

logger = logging.getLogger(__name__)


class Container:
    """Dependency Injection Container."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or Settings()
        self._codecs: dict[str, GraphCodecPort] | None = None
        self._emitter: ResultEmitterPort | None = None
        self._workflow = None

    @property
    def codecs(self) -> dict[str, GraphCodecPort]:
        if self._codecs is None:
            from adapters.edgelist_codec import EdgeListCodec
            from adapters.graph6_codec import Graph6Codec

            self._codecs = {codec.format_name: codec for codec in (EdgeListCodec(), Graph6Codec())}
        return self._codecs

    @property
    def emitter(self) -> ResultEmitterPort:
        if self._emitter is None:
            from adapters.json_emitter import JsonResultEmitter

            self._emitter = JsonResultEmitter()
        return self._emitter

    @property
    def workflow(self):
        if self._workflow is None:
            self._workflow = CanonGraphBuilder(self.settings).build()
        return self._workflow

    def codec_for(self, text: str, fmt: str = "auto") -> GraphCodecPort:
        if fmt != "auto":
            return self.codecs[fmt]
        for codec in self.codecs.values():
            if codec.sniff(text):
                logger.debug("detected %s input", codec.format_name)
                return codec
        raise ParseError("auto", "input is neither an edge list nor graph6")

    def read_graph(self, path: str, fmt: str = "auto") -> ColoredGraph:
        try:
            text = Path(path).read_text(encoding="ascii")
        except (OSError, UnicodeDecodeError) as e:
            raise AdapterError("Container", f"read {path}", e)
        return self.codec_for(text, fmt).parse(text)

    def run(self, graph: ColoredGraph, k: int | None = None, stage: Stage = "canon") -> CanonState:
        """Run the workflow up to `stage`; a stopped run raises with the recorded error."""
        final = self.workflow.invoke(create_initial_state(graph, k, stage))
        if final.get("error"):
            raise TwCanonError(final["error"], context={"stage": final.get("last_stage")})
        for stage_name, seconds in final["stage_timings"].items():
            logger.debug("%s took %.3fs", stage_name, seconds)
        return final
