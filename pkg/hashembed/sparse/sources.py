"""Concrete row sources."""

from pathlib import Path
from typing import Iterator, Optional, Tuple, Union

import numpy as np

from hashembed.core.config import settings
from hashembed.core.logger import logger
from hashembed.codes.storage import read_dense_block, read_dense_header
from hashembed.sparse.csr import CsrMatrix
from hashembed.sparse.interface import RowSource


class InMemoryRowSource(RowSource):
    """Row source over a CSR matrix held in memory."""

    def __init__(self, matrix: CsrMatrix, block_rows: Optional[int] = None):
        self.matrix = matrix
        self.block_rows = block_rows or settings.stream_block_rows

    @classmethod
    def from_dense(cls, matrix: np.ndarray, block_rows: Optional[int] = None) -> "InMemoryRowSource":
        """Wrap a dense array."""
        return cls(CsrMatrix.from_dense(matrix), block_rows)

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols

    def iter_blocks(
        self, block_rows: Optional[int] = None
    ) -> Iterator[Tuple[int, CsrMatrix]]:
        step = block_rows or self.block_rows
        for start in range(0, self.n_rows, step):
            yield start, self.matrix.slice_rows(start, start + step)


class DenseFileRowSource(RowSource):
    """
    Row source streaming a GEF32 file block by block.

    Only one block of rows is resident at a time. Blocks go through the
    same CSR conversion as in-memory sources, so projections are
    bitwise-identical across the two.
    """

    def __init__(self, path: Union[str, Path], block_rows: Optional[int] = None):
        self.path = Path(path)
        self.block_rows = block_rows or settings.stream_block_rows
        with self.path.open("rb") as fh:
            self._rows, self._cols = read_dense_header(fh)
            self._data_offset = fh.tell()
        logger.info(f"Streaming source opened: {self.path} ({self._rows} x {self._cols})")

    @property
    def n_rows(self) -> int:
        return self._rows

    @property
    def n_cols(self) -> int:
        return self._cols

    def iter_blocks(
        self, block_rows: Optional[int] = None
    ) -> Iterator[Tuple[int, CsrMatrix]]:
        step = block_rows or self.block_rows
        with self.path.open("rb") as fh:
            fh.seek(self._data_offset)
            for start in range(0, self._rows, step):
                count = min(step, self._rows - start)
                block = read_dense_block(fh, count, self._cols)
                yield start, CsrMatrix.from_dense(block)
