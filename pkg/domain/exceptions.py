"""Custom domain exceptions for the twcanon pipeline."""


class TwCanonError(Exception):
    """Base class for all twcanon exceptions."""

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}


class DomainError(TwCanonError):
    """Raised when an operation receives arguments outside its domain."""

    def __init__(self, operation: str, reason: str, **context):
        super().__init__(
            f"{operation}: {reason}",
            context={"operation": operation, "reason": reason, **context},
        )


class ContractViolationError(TwCanonError):
    """Raised when a precondition or a runtime contract of the construction fails."""

    def __init__(self, operation: str, contract: str, node: object = None, **context):
        where = f" at node {node!r}" if node is not None else ""
        super().__init__(
            f"Contract violated in '{operation}'{where}: {contract}",
            context={"operation": operation, "contract": contract, "node": node, **context},
        )
        self.node = node


class ThresholdContractError(ContractViolationError):
    """Raised when descriptor expansion stalls under the current small/medium thresholds."""


class CapacityError(TwCanonError):
    """Raised when an input exceeds a configured enumeration or oracle limit."""

    def __init__(self, resource: str, size: int, limit: int, remedy: str = ""):
        hint = f" ({remedy})" if remedy else ""
        super().__init__(
            f"{resource} of size {size} exceeds the configured limit {limit}{hint}",
            context={"resource": resource, "size": size, "limit": limit},
        )


class ParseError(TwCanonError):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, fmt: str, reason: str, line: int | None = None, offset: int | None = None):
        position = ""
        if line is not None:
            position = f" (line {line}" + (f", offset {offset})" if offset is not None else ")")
        elif offset is not None:
            position = f" (offset {offset})"
        super().__init__(
            f"Malformed {fmt} input{position}: {reason}",
            context={"format": fmt, "reason": reason, "line": line, "offset": offset},
        )


class AdapterError(TwCanonError):
    """Raised when an adapter fails to read or write an external artifact."""

    def __init__(self, adapter_name: str, operation: str, original_error: Exception):
        super().__init__(
            f"Adapter '{adapter_name}' failed during '{operation}': {str(original_error)}",
            context={
                "adapter": adapter_name,
                "operation": operation,
                "original_error": str(original_error),
            },
        )
        self.original_error = original_error
