"""Two-layer GraphSAGE with mean aggregation."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.exceptions import DomainError, ShapeError
from hashembed.core.models import SageConfig
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.decoder.model import DecoderParams
from hashembed.gnn.features import CodeFeatures, NodeFeatures
from hashembed.gnn.graph import GraphStore
from hashembed.gnn.sampling import sample_hops
from hashembed.nn.functional import affine, concat, group_mean, init_affine, relu, take_rows
from hashembed.nn.tensor import Tensor

# the decoder owns streams 0 and 1
SAGE_STREAM = 2

Affine = Tuple[Tensor, Tensor]


@dataclass
class SageParams:
    """Weights of both SAGE layers and the output projection."""

    config: SageConfig
    layer1: Affine
    layer2: Affine
    output: Affine

    def parameters(self) -> List[Tensor]:
        return [*self.layer1, *self.layer2, *self.output]


def init_sage(cfg: SageConfig, d_in: int, dtype=np.float32) -> SageParams:
    """Glorot-initialized SAGE weights for ``d_in``-wide node features."""
    rng = make_rng(derive_seed(cfg.seed, SAGE_STREAM))
    return SageParams(
        config=cfg,
        layer1=init_affine(2 * d_in, cfg.hidden, rng, dtype),
        layer2=init_affine(2 * cfg.hidden, cfg.hidden, rng, dtype),
        output=init_affine(cfg.hidden, cfg.classes, rng, dtype),
    )


def aggregate_mean(h: Tensor, group_size: int = 0) -> Tensor:
    """
    Average neighbor representations.

    Args:
        h: (G*group_size, d) stacked neighbor vectors
        group_size: Rows per group; 0 treats all of ``h`` as one group

    Returns:
        (G, d) group means

    Raises:
        DomainError: If there is nothing to average
    """
    if h.shape[0] == 0:
        raise DomainError("cannot aggregate an empty neighbor set")
    return group_mean(h, group_size or h.shape[0])


def sage_layer(aggregated: Tensor, own: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """
    relu([aggregated, own] w + b).

    ``w`` has shape (2*d_in, d_out).
    """
    if aggregated.shape != own.shape:
        raise ShapeError(f"aggregate {aggregated.shape} and own features {own.shape} differ")
    return relu(affine(concat([aggregated, own]), w, b))


def forward_sampled(
    batch: np.ndarray,
    first: np.ndarray,
    second: np.ndarray,
    features: NodeFeatures,
    params: SageParams,
) -> Tensor:
    """
    Logits for ``batch`` given already sampled neighborhoods.

    Every distinct node id is looked up once; repeats share the same
    feature row and its gradient.

    Args:
        batch: (B,) node ids
        first: (B, k) sampled neighbors of the batch
        second: (B*k, k) sampled neighbors of ``first`` in row-major order
        features: Node feature provider
        params: SAGE weights

    Returns:
        (B, classes) logits
    """
    batch = np.asarray(batch, dtype=np.int64)
    k = first.shape[1]
    if first.shape[0] != len(batch) or second.shape != (first.size, k):
        raise ShapeError(
            f"inconsistent samples: batch {batch.shape}, first {first.shape}, second {second.shape}"
        )
    ids = np.concatenate([batch, first.reshape(-1), second.reshape(-1)])
    unique, inverse = np.unique(ids, return_inverse=True)
    inverse = inverse.reshape(-1)
    table = features.lookup(unique)

    b, bk = len(batch), first.size
    x_batch = take_rows(table, inverse[:b])
    x_first = take_rows(table, inverse[b : b + bk])
    x_second = take_rows(table, inverse[b + bk :])

    h_batch = sage_layer(aggregate_mean(x_first, k), x_batch, *params.layer1)
    h_first = sage_layer(aggregate_mean(x_second, k), x_first, *params.layer1)
    h = sage_layer(aggregate_mean(h_first, k), h_batch, *params.layer2)
    return affine(h, *params.output)


def forward_features(
    graph: GraphStore,
    batch: np.ndarray,
    features: NodeFeatures,
    params: SageParams,
    rng: np.random.Generator,
) -> Tensor:
    """Sample two hops with ``rng`` and run :func:`forward_sampled`."""
    first, second = sample_hops(graph, batch, params.config.k, rng)
    return forward_sampled(batch, first, second, features, params)


def forward_batch(
    graph: GraphStore,
    batch: np.ndarray,
    codes: CodeMatrix,
    decoder: DecoderParams,
    params: SageParams,
    rng: np.random.Generator,
) -> Tensor:
    """Logits for ``batch`` with input features decoded from ``codes``."""
    return forward_features(graph, batch, CodeFeatures(codes, decoder), params, rng)
