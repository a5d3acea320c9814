"""Ports layer - Abstract interfaces for graph input and result output."""
from ports.codec import GraphCodecPort
from ports.emitter import ResultEmitterPort

__all__ = ["GraphCodecPort", "ResultEmitterPort"]
