"""Bit-packed compositional code matrix."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from hashembed.core.exceptions import RangeError, ShapeError
from hashembed.core.models import ThresholdMode
from hashembed.codes.packing import code_bits, pack_codes, row_bytes, unpack_codes


@dataclass(frozen=True, eq=False)
class CodeMatrix:
    """
    Compositional codes of ``n`` entities, one packed bit row each.

    ``seed`` and ``threshold_mode`` record how the codes were produced and
    travel with them into the code file header.
    """

    n: int
    c: int
    m: int
    bits: np.ndarray
    seed: int = 0
    threshold_mode: ThresholdMode = ThresholdMode.MEDIAN

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        expected = (self.n, row_bytes(self.c, self.m))
        if bits.shape != expected:
            raise ShapeError(f"packed bits have shape {bits.shape}, expected {expected}")
        if self.n and np.unpackbits(bits, axis=1)[:, self.n_bit :].any():
            raise ShapeError("pad bits must be zero")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def n_bit(self) -> int:
        """Meaningful bits per row."""
        return code_bits(self.c, self.m)

    @property
    def row_bytes(self) -> int:
        """Stored bytes per row, pad included."""
        return self.bits.shape[1]

    @classmethod
    def from_bool(
        cls,
        bits: np.ndarray,
        c: int,
        m: int,
        seed: int = 0,
        threshold_mode: ThresholdMode = ThresholdMode.MEDIAN,
    ) -> "CodeMatrix":
        """Pack an (n, m*log2(c)) boolean matrix."""
        bits = np.asarray(bits, dtype=bool)
        if bits.ndim != 2 or bits.shape[1] != code_bits(c, m):
            raise ShapeError(f"boolean codes of shape {bits.shape} do not match c={c}, m={m}")
        packed = np.packbits(bits, axis=1, bitorder="big")
        return cls(len(bits), c, m, packed, seed, threshold_mode)

    @classmethod
    def from_codes(
        cls,
        codes: np.ndarray,
        c: int,
        seed: int = 0,
        threshold_mode: ThresholdMode = ThresholdMode.MEDIAN,
    ) -> "CodeMatrix":
        """Pack an (n, m) integer code matrix."""
        codes = np.asarray(codes, dtype=np.int64)
        return cls(len(codes), c, codes.shape[1], pack_codes(codes, c), seed, threshold_mode)

    def to_bool(self) -> np.ndarray:
        """(n, n_bit) boolean view of the codes."""
        return np.unpackbits(self.bits, axis=1, bitorder="big")[:, : self.n_bit].astype(bool)

    def unpack_rows(self, rows: Sequence[int]) -> np.ndarray:
        """
        Integer codes of the selected rows.

        Raises:
            RangeError: If a row index is outside [0, n)
        """
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size and (rows.min() < 0 or rows.max() >= self.n):
            raise RangeError(f"row index outside [0, {self.n})")
        return unpack_codes(self.bits[rows], self.c, self.m)

    def unpack_all(self) -> np.ndarray:
        """(n, m) integer codes."""
        return unpack_codes(self.bits, self.c, self.m)

    def distinct_rows(self) -> int:
        """Number of distinct code rows."""
        if self.n == 0:
            return 0
        return len(np.unique(self.bits, axis=0))

    def same_bits(self, other: "CodeMatrix") -> bool:
        """Bitwise equality of parametrization and payload."""
        return (
            (self.n, self.c, self.m) == (other.n, other.c, other.m)
            and np.array_equal(self.bits, other.bits)
        )
