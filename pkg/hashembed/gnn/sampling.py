"""Uniform neighbor sampling with replacement."""

from typing import Tuple

import numpy as np

from hashembed.core.exceptions import DomainError, RangeError
from hashembed.gnn.graph import GraphStore


def sample_neighbors(
    graph: GraphStore, nodes: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    """
    Draw ``k`` neighbors per node, uniformly with replacement.

    An isolated node draws itself ``k`` times.

    Returns:
        (len(nodes), k) array of node ids
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    if k < 1:
        raise DomainError("k must be at least 1")
    if nodes.size and (nodes.min() < 0 or nodes.max() >= graph.n):
        raise RangeError(f"node id outside [0, {graph.n})")
    degree = graph.degree[nodes]
    offsets = rng.integers(0, np.maximum(degree, 1)[:, None], size=(len(nodes), k))
    sampled = np.repeat(nodes[:, None], k, axis=1)
    connected = degree > 0
    positions = graph.row_ptr[nodes][connected, None] + offsets[connected]
    sampled[connected] = graph.col_idx[positions]
    return sampled


def sample_hops(
    graph: GraphStore, batch: np.ndarray, k: int, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """
    First neighbors of the batch and second neighbors of every first neighbor.

    Returns:
        (first, second) with shapes (B, k) and (B*k, k)
    """
    first = sample_neighbors(graph, batch, k, rng)
    second = sample_neighbors(graph, first.reshape(-1), k, rng)
    return first, second
