"""Domain layer - Core entities and exceptions."""
from domain.exceptions import (
    TwCanonError,
    DomainError,
    ContractViolationError,
    ThresholdContractError,
    CapacityError,
    ParseError,
    AdapterError,
)
from domain.graph_models import (
    ColoredGraph,
    Separation,
    INFINITY,
    DIAGONAL_COLOR,
    NON_EDGE_COLOR,
    EDGE_COLOR,
    IMPROVEMENT_COLOR,
    MARKER_COLOR,
    edge_key,
)
from domain.decomposition_models import (
    TreeDecomposition,
    RootedTreeDecomposition,
    ValidationReport,
    AtomFamily,
    GraphWithInterface,
    DescriptorDecomposition,
    NestedDecomposition,
    RootSet,
)
from domain.results import CmpResult, CanonResult, IsomorphismResult

__all__ = [
    "TwCanonError",
    "DomainError",
    "ContractViolationError",
    "ThresholdContractError",
    "CapacityError",
    "ParseError",
    "AdapterError",
    "ColoredGraph",
    "Separation",
    "INFINITY",
    "DIAGONAL_COLOR",
    "NON_EDGE_COLOR",
    "EDGE_COLOR",
    "IMPROVEMENT_COLOR",
    "MARKER_COLOR",
    "edge_key",
    "TreeDecomposition",
    "RootedTreeDecomposition",
    "ValidationReport",
    "AtomFamily",
    "GraphWithInterface",
    "DescriptorDecomposition",
    "NestedDecomposition",
    "RootSet",
    "CmpResult",
    "CanonResult",
    "IsomorphismResult",
]
