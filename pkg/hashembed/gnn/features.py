"""Node feature providers feeding the first SAGE layer."""

from abc import ABC, abstractmethod
from typing import List

import numpy as np

from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.seeding import make_rng
from hashembed.decoder.model import DecoderParams, decode_batch
from hashembed.nn.functional import take_rows
from hashembed.nn.tensor import Tensor


class NodeFeatures(ABC):
    """Abstract source of per-node input embeddings."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Embedding width."""
        pass

    @abstractmethod
    def lookup(self, ids: np.ndarray) -> Tensor:
        """Differentiable embeddings of ``ids``."""
        pass

    @abstractmethod
    def parameters(self) -> List[Tensor]:
        """Trainable tensors."""
        pass


class CodeFeatures(NodeFeatures):
    """Embeddings decoded on the fly from compositional codes."""

    def __init__(self, codes: CodeMatrix, decoder: DecoderParams):
        self.codes = codes
        self.decoder = decoder

    @property
    def dim(self) -> int:
        return self.decoder.config.d_e

    def lookup(self, ids: np.ndarray) -> Tensor:
        return decode_batch(self.codes, ids, self.decoder)

    def parameters(self) -> List[Tensor]:
        return self.decoder.trainable()


class RawFeatures(NodeFeatures):
    """Uncompressed trainable embedding table, one row per node."""

    def __init__(self, n: int, dim: int, seed: int, dtype=np.float32):
        self.table = Tensor(
            make_rng(seed).standard_normal((n, dim)).astype(dtype), requires_grad=True
        )

    @property
    def dim(self) -> int:
        return self.table.shape[1]

    def lookup(self, ids: np.ndarray) -> Tensor:
        return take_rows(self.table, ids)

    def parameters(self) -> List[Tensor]:
        return [self.table]
