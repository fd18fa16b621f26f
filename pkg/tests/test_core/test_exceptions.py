"""Tests for the error taxonomy."""

import pytest

from hashembed.core.exceptions import (
    CodeFormatError,
    ConfigError,
    ContractError,
    DomainError,
    HashEmbedError,
    ParseError,
    RangeError,
    ShapeError,
)


class TestExceptions:
    """Test error classes."""

    @pytest.mark.parametrize(
        "error", [ParseError, RangeError, ShapeError, DomainError, ConfigError, CodeFormatError, ContractError]
    )
    def test_all_are_value_errors(self, error):
        """Test that every error is a HashEmbedError and a ValueError."""
        assert issubclass(error, HashEmbedError)
        assert issubclass(error, ValueError)

    def test_parse_error_carries_line(self):
        """Test the line prefix."""
        e = ParseError("bad token", line=3)
        assert e.line == 3
        assert str(e) == "line 3: bad token"

    def test_code_format_error_carries_offset(self):
        """Test the offset suffix."""
        e = CodeFormatError("bad magic", offset=0)
        assert e.offset == 0
        assert str(e) == "bad magic (at byte offset 0)"
