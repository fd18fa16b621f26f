"""Error taxonomy for hashembed.

Every error derives from ``ValueError`` so callers that only know about
``ValueError`` still catch them.
"""

from typing import Optional


class HashEmbedError(ValueError):
    """Base class for all hashembed errors."""


class ParseError(HashEmbedError):
    """Malformed text input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(HashEmbedError):
    """Index or value outside its admissible range."""


class ShapeError(HashEmbedError):
    """Incompatible array or tensor shapes."""


class DomainError(HashEmbedError):
    """Argument outside the mathematical domain of an operation."""


class ConfigError(HashEmbedError):
    """Invalid or inconsistent configuration."""


class CodeFormatError(HashEmbedError):
    """Corrupt, truncated or unsupported binary file."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class ContractError(HashEmbedError):
    """A function was called outside its contract."""
