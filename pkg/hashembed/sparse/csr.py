"""Compressed sparse row matrix."""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Set, Tuple

import numpy as np
import scipy.sparse as ss

from hashembed.core.exceptions import RangeError, ShapeError


class SparseRow(NamedTuple):
    """One row of a CSR matrix: sorted column indices and their values."""

    col_idx: np.ndarray
    values: np.ndarray


def row_dot(row: SparseRow, v: np.ndarray) -> float:
    """
    Dot product of a sparse row with a dense vector.

    Args:
        row: Sparse row
        v: Dense vector

    Returns:
        sum(values[k] * v[col_idx[k]])

    Raises:
        RangeError: If a column index does not fit ``v``
    """
    if len(row.col_idx) == 0:
        return 0.0
    if row.col_idx.max() >= len(v) or row.col_idx.min() < 0:
        raise RangeError(
            f"column index {int(row.col_idx.max())} out of bounds for vector of length {len(v)}"
        )
    return float(np.dot(row.values, np.asarray(v, dtype=np.float64)[row.col_idx]))


@dataclass(frozen=True, eq=False)
class CsrMatrix:
    """
    Immutable row-major sparse matrix.

    Within a row, column indices are strictly increasing. Arrays are
    marked read-only after validation so instances can be shared.
    """

    n_rows: int
    n_cols: int
    row_ptr: np.ndarray
    col_idx: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        row_ptr = np.ascontiguousarray(self.row_ptr, dtype=np.int64)
        col_idx = np.ascontiguousarray(self.col_idx, dtype=np.int64)
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        object.__setattr__(self, "row_ptr", row_ptr)
        object.__setattr__(self, "col_idx", col_idx)
        object.__setattr__(self, "values", values)
        self._validate()
        for array in (row_ptr, col_idx, values):
            array.flags.writeable = False

    def _validate(self) -> None:
        nnz = len(self.col_idx)
        if self.n_rows < 0 or self.n_cols < 0:
            raise ShapeError(f"negative shape ({self.n_rows}, {self.n_cols})")
        if len(self.row_ptr) != self.n_rows + 1:
            raise ShapeError(
                f"row_ptr has length {len(self.row_ptr)}, expected {self.n_rows + 1}"
            )
        if len(self.values) != nnz:
            raise ShapeError(f"{len(self.values)} values for {nnz} column indices")
        if self.row_ptr[0] != 0 or self.row_ptr[-1] != nnz:
            raise ShapeError("row_ptr must start at 0 and end at nnz")
        if np.any(np.diff(self.row_ptr) < 0):
            raise ShapeError("row_ptr must be non-decreasing")
        if nnz == 0:
            return
        if self.col_idx.min() < 0 or self.col_idx.max() >= self.n_cols:
            raise RangeError(f"column index outside [0, {self.n_cols})")
        # column indices must increase strictly except across row boundaries
        within_row = np.ones(nnz - 1, dtype=bool)
        starts = self.row_ptr[1:-1]
        starts = starts[(starts > 0) & (starts < nnz)]
        within_row[starts - 1] = False
        if np.any(np.diff(self.col_idx)[within_row] <= 0):
            raise ShapeError("column indices within a row must be strictly increasing")

    @classmethod
    def from_scipy(cls, matrix: ss.spmatrix) -> "CsrMatrix":
        """Build from any scipy sparse matrix; duplicates are summed by scipy."""
        csr = ss.csr_matrix(matrix, dtype=np.float64, copy=True)
        csr.sum_duplicates()
        csr.sort_indices()
        return cls(
            n_rows=csr.shape[0],
            n_cols=csr.shape[1],
            row_ptr=csr.indptr,
            col_idx=csr.indices,
            values=csr.data,
        )

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> "CsrMatrix":
        """Build from a dense 2-D array, dropping exact zeros."""
        dense = np.asarray(matrix, dtype=np.float64)
        if dense.ndim != 2:
            raise ShapeError(f"expected a 2-D array, got shape {dense.shape}")
        return cls.from_scipy(ss.csr_matrix(dense))

    @cached_property
    def _scipy(self) -> ss.csr_matrix:
        return ss.csr_matrix(
            (self.values, self.col_idx, self.row_ptr),
            shape=(self.n_rows, self.n_cols),
        )

    @property
    def nnz(self) -> int:
        """Number of stored entries."""
        return len(self.col_idx)

    @property
    def shape(self) -> Tuple[int, int]:
        """(n_rows, n_cols)."""
        return (self.n_rows, self.n_cols)

    def row(self, j: int) -> SparseRow:
        """Return row ``j``."""
        if not 0 <= j < self.n_rows:
            raise RangeError(f"row {j} out of range [0, {self.n_rows})")
        lo, hi = self.row_ptr[j], self.row_ptr[j + 1]
        return SparseRow(self.col_idx[lo:hi], self.values[lo:hi])

    def slice_rows(self, start: int, stop: int) -> "CsrMatrix":
        """Rows ``start..stop`` as a new matrix with the same column count."""
        stop = min(stop, self.n_rows)
        lo, hi = self.row_ptr[start], self.row_ptr[stop]
        return CsrMatrix(
            n_rows=stop - start,
            n_cols=self.n_cols,
            row_ptr=self.row_ptr[start : stop + 1] - lo,
            col_idx=self.col_idx[lo:hi],
            values=self.values[lo:hi],
        )

    def dot(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product; row ``j`` of the result equals ``row_dot(row(j), v)``."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n_cols,):
            raise ShapeError(f"vector of shape {v.shape} for matrix with {self.n_cols} columns")
        return np.asarray(self._scipy @ v, dtype=np.float64)

    def to_dense(self) -> np.ndarray:
        """Dense float64 copy."""
        return self._scipy.toarray()

    def transpose(self) -> "CsrMatrix":
        """Transposed copy."""
        return CsrMatrix.from_scipy(self._scipy.T)

    def coordinates(self) -> Set[Tuple[int, int]]:
        """Set of (row, col) positions of stored entries."""
        rows = np.repeat(np.arange(self.n_rows), np.diff(self.row_ptr))
        return set(zip(rows.tolist(), self.col_idx.tolist()))
