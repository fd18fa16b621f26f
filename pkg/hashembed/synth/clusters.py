"""Clustered Gaussian embeddings."""

import numpy as np

from hashembed.core.models import ClusterEmbConfig
from hashembed.core.seeding import make_rng


def gen_cluster_embeddings(cfg: ClusterEmbConfig) -> np.ndarray:
    """
    Points scattered around well-separated random centers.

    Centers are N(0, center_scale^2) per coordinate, all shifted by one
    shared N(0, center_offset^2) vector; each point adds N(0, noise_scale^2)
    noise. Rows are grouped by cluster.

    Returns:
        (clusters * points_per_cluster, dim) float64 matrix
    """
    rng = make_rng(cfg.seed)
    centers = rng.standard_normal((cfg.clusters, cfg.dim)) * cfg.center_scale
    centers += rng.standard_normal(cfg.dim) * cfg.center_offset
    noise = rng.standard_normal((cfg.clusters, cfg.points_per_cluster, cfg.dim)) * cfg.noise_scale
    return (centers[:, None, :] + noise).reshape(-1, cfg.dim)


def cluster_labels(cfg: ClusterEmbConfig) -> np.ndarray:
    """Cluster id of every row of :func:`gen_cluster_embeddings`."""
    return np.repeat(np.arange(cfg.clusters, dtype=np.int64), cfg.points_per_cluster)
