"""Conversion between integer compositional codes and packed bits.

Element ``j`` of a code occupies ``log2(c)`` bits starting at bit
``j * log2(c)``, most-significant bit first; bytes are filled MSB first
and trailing pad bits are zero.
"""

import numpy as np

from hashembed.core.exceptions import DomainError, RangeError, ShapeError
from hashembed.core.models import is_power_of_two


def bits_per_element(c: int) -> int:
    """log2(c) for a power-of-two cardinality."""
    if not is_power_of_two(c) or c < 2:
        raise DomainError(f"c must be a power of 2, got {c}")
    return c.bit_length() - 1


def code_bits(c: int, m: int) -> int:
    """Number of bits that store one code vector, m * log2(c)."""
    return m * bits_per_element(c)


def row_bytes(c: int, m: int) -> int:
    """Bytes occupied by one packed code row."""
    return (code_bits(c, m) + 7) // 8


def _place_weights(b: int) -> np.ndarray:
    return (1 << np.arange(b - 1, -1, -1)).astype(np.int64)


def pack_codes(codes: np.ndarray, c: int) -> np.ndarray:
    """
    Pack an (n, m) integer code matrix into (n, row_bytes) uint8 rows.

    Raises:
        RangeError: If any element is outside [0, c)
    """
    b = bits_per_element(c)
    codes = np.asarray(codes, dtype=np.int64)
    if codes.ndim != 2:
        raise ShapeError(f"expected an (n, m) code matrix, got shape {codes.shape}")
    if codes.size and (codes.min() < 0 or codes.max() >= c):
        raise RangeError(f"code elements must lie in [0, {c})")
    n, m = codes.shape
    bits = (codes[:, :, None] >> np.arange(b - 1, -1, -1)) & 1
    return np.packbits(bits.reshape(n, m * b).astype(np.uint8), axis=1, bitorder="big")


def unpack_codes(rows: np.ndarray, c: int, m: int) -> np.ndarray:
    """
    Unpack (n, row_bytes) packed rows into an (n, m) int64 code matrix.

    Raises:
        ShapeError: If the rows hold fewer than m * log2(c) bits
    """
    b = bits_per_element(c)
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim != 2:
        raise ShapeError(f"expected 2-D packed rows, got shape {rows.shape}")
    n_bit = m * b
    if rows.shape[1] * 8 < n_bit:
        raise ShapeError(f"rows hold {rows.shape[1] * 8} bits, need {n_bit}")
    bits = np.unpackbits(rows, axis=1, bitorder="big")[:, :n_bit]
    return bits.reshape(len(rows), m, b).astype(np.int64) @ _place_weights(b)


def pack_code(code, c: int) -> np.ndarray:
    """Pack one integer code vector into a uint8 bit row."""
    return pack_codes(np.asarray(code, dtype=np.int64).reshape(1, -1), c)[0]


def unpack_code(row, c: int, m: int) -> np.ndarray:
    """Inverse of :func:`pack_code`."""
    return unpack_codes(np.asarray(row, dtype=np.uint8).reshape(1, -1), c, m)[0]
