"""Adapters layer - Concrete implementations of ports."""
from adapters.graph6_codec import Graph6Codec
from adapters.edgelist_codec import EdgeListCodec
from adapters.json_emitter import JsonResultEmitter

__all__ = [
    "Graph6Codec",
    "EdgeListCodec",
    "JsonResultEmitter",
]
