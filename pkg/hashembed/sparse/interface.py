"""Row source interface for the auxiliary matrix."""

from abc import ABC, abstractmethod
from typing import Iterator, Optional, Tuple

from hashembed.sparse.csr import CsrMatrix, SparseRow


class RowSource(ABC):
    """
    Abstract provider of the rows of an auxiliary matrix.

    Sources are re-iterable: every call to :meth:`iter_blocks` starts a
    fresh pass, so concurrent consumers each open their own pass.
    """

    @property
    @abstractmethod
    def n_rows(self) -> int:
        """Number of rows (entities)."""
        pass

    @property
    @abstractmethod
    def n_cols(self) -> int:
        """Row width."""
        pass

    @abstractmethod
    def iter_blocks(
        self, block_rows: Optional[int] = None
    ) -> Iterator[Tuple[int, CsrMatrix]]:
        """Yield (first_row_index, block) pairs in ascending row order."""
        pass

    def iter_rows(self) -> Iterator[Tuple[int, SparseRow]]:
        """Yield (row_index, row) pairs in ascending row order."""
        for start, block in self.iter_blocks():
            for offset in range(block.n_rows):
                yield start + offset, block.row(offset)

    def __iter__(self) -> Iterator[Tuple[int, SparseRow]]:
        return self.iter_rows()
