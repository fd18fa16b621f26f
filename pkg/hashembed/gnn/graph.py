"""Adjacency lists for neighbor sampling."""

from dataclasses import dataclass

import numpy as np

from hashembed.core.exceptions import RangeError, ShapeError
from hashembed.sparse.csr import CsrMatrix


@dataclass(frozen=True, eq=False)
class GraphStore:
    """
    Undirected graph as sorted, deduplicated neighbor lists.

    Self-loops are dropped: a node's own features enter SAGE layers
    separately, never through its neighbor sample.
    """

    n: int
    row_ptr: np.ndarray
    col_idx: np.ndarray

    @classmethod
    def from_adjacency(cls, adjacency: CsrMatrix) -> "GraphStore":
        """
        Build from a symmetric adjacency matrix.

        Raises:
            ShapeError: If the matrix is not square or not symmetric
        """
        if adjacency.n_rows != adjacency.n_cols:
            raise ShapeError(f"adjacency must be square, got {adjacency.shape}")
        if adjacency.coordinates() != adjacency.transpose().coordinates():
            raise ShapeError("adjacency must be symmetric; load the edge list with symmetrize")
        rows = np.repeat(np.arange(adjacency.n_rows), np.diff(adjacency.row_ptr))
        keep = rows != adjacency.col_idx
        counts = np.bincount(rows[keep], minlength=adjacency.n_rows)
        return cls(
            n=adjacency.n_rows,
            row_ptr=np.concatenate([[0], np.cumsum(counts)]).astype(np.int64),
            col_idx=adjacency.col_idx[keep].copy(),
        )

    @property
    def degree(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    def neighbors(self, node: int) -> np.ndarray:
        """Sorted neighbor ids of ``node``."""
        if not 0 <= node < self.n:
            raise RangeError(f"node {node} out of range [0, {self.n})")
        return self.col_idx[self.row_ptr[node] : self.row_ptr[node + 1]]
