"""Pipeline nodes for the canonization workflow."""
from pipeline.nodes.width import WidthResolverNode
from pipeline.nodes.improver import ImproverNode
from pipeline.nodes.atomizer import AtomizerNode
from pipeline.nodes.bounded import BoundedDecomposerNode
from pipeline.nodes.nester import NesterNode
from pipeline.nodes.canonizer import CanonizerNode
from pipeline.nodes.auditor import AuditorNode

__all__ = [
    "WidthResolverNode",
    "ImproverNode",
    "AtomizerNode",
    "BoundedDecomposerNode",
    "NesterNode",
    "CanonizerNode",
    "AuditorNode",
]
