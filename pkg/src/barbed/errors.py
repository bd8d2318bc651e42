"""Exception types shared across the package."""


class BarbedError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(BarbedError):
    """Raised when an edge-list document is malformed.

    ``kind`` is one of ``malformed-line``, ``nonpositive-weight``,
    ``duplicate-edge``, ``self-loop``, ``bad-header``; ``line`` is the
    1-based line number in the input document.
    """

    def __init__(self, kind: str, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


class GraphValidationError(BarbedError):
    """Raised when a graph value violates a structural invariant."""


class DisconnectedGraphError(BarbedError):
    """Raised by operations that require a connected graph."""


class CapExceededError(BarbedError):
    """Raised when an enumeration or simplex budget would be exceeded.

    ``required`` carries the offending count so callers can report it.
    """

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class InconsistentPathsError(BarbedError):
    """Raised when a path choice function fails the consistency check."""
