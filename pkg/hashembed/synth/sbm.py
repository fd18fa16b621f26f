"""Stochastic block model graphs."""

from typing import Tuple

import numpy as np

from hashembed.core.logger import logger
from hashembed.core.models import SbmConfig
from hashembed.core.seeding import make_rng


def gen_sbm(cfg: SbmConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sample an undirected SBM graph.

    Every unordered pair inside a community is an edge with probability
    ``p_in``, every pair across communities with ``p_out``. Community
    pairs are visited in a fixed order, so the output depends only on
    the config.

    Returns:
        (edges, labels): an (E, 2) array of u < v pairs sorted
        lexicographically, and the community of each node
    """
    rng = make_rng(cfg.seed)
    size = cfg.nodes_per_community
    blocks = []
    for a in range(cfg.communities):
        for b in range(a, cfg.communities):
            draws = rng.random((size, size))
            if a == b:
                mask = np.triu(draws < cfg.p_in, k=1)
            else:
                mask = draws < cfg.p_out
            rows, cols = np.nonzero(mask)
            blocks.append(np.stack([rows + a * size, cols + b * size], axis=1))

    edges = np.concatenate(blocks).astype(np.int64) if blocks else np.empty((0, 2), np.int64)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    labels = np.repeat(np.arange(cfg.communities, dtype=np.int64), size)
    logger.info(f"SBM sampled: {len(labels)} nodes, {len(edges)} edges")
    return edges, labels
