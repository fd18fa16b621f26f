"""synth-sbm and synth-emb commands."""

from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import Field

from hashembed.cli.commands import add_command
from hashembed.cli.run_config import RunConfig, build
from hashembed.codes.storage import write_dense
from hashembed.core.logger import logger
from hashembed.core.models import ClusterEmbConfig, SbmConfig
from hashembed.gnn.io import write_labels, write_splits
from hashembed.sparse.edge_list import write_edge_list
from hashembed.synth.clusters import cluster_labels, gen_cluster_embeddings
from hashembed.synth.sbm import gen_sbm
from hashembed.synth.splits import gen_splits


class SynthSbmRun(RunConfig):
    """Settings of ``synth-sbm``."""

    communities: int = Field(default=4, ge=1)
    nodes_per_community: int = Field(default=500, ge=1)
    p_in: float = 0.05
    p_out: float = 0.002
    train: float = 0.7
    valid: float = 0.1
    seed: int = Field(default=0, ge=0, lt=2**64)
    out_dir: Path


class SynthEmbRun(RunConfig):
    """Settings of ``synth-emb``."""

    clusters: int = Field(default=8, ge=1)
    points_per_cluster: int = Field(default=2500, ge=1)
    dim: int = Field(default=32, ge=1)
    center_scale: float = 1.0
    noise_scale: float = 0.1
    center_offset: float = 0.0
    seed: int = Field(default=0, ge=0, lt=2**64)
    out: Path
    labels: Optional[Path] = None


def run_synth_sbm(cfg: SynthSbmRun) -> None:
    sbm = build(
        SbmConfig,
        communities=cfg.communities,
        nodes_per_community=cfg.nodes_per_community,
        p_in=cfg.p_in,
        p_out=cfg.p_out,
        seed=cfg.seed,
    )
    edges, labels = gen_sbm(sbm)
    splits = gen_splits(len(labels), cfg.train, cfg.valid, cfg.seed)

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_edge_list(edges, out_dir / "edges.tsv", header=f"sbm nodes={len(labels)}")
    write_labels(labels, out_dir / "labels.tsv")
    write_splits(splits, out_dir / "splits.tsv")

    print(f"nodes: {len(labels)}")
    print(f"edges: {len(edges)}")
    print(" ".join(f"{name}: {len(ids)}" for name, ids in splits.items()))


def run_synth_emb(cfg: SynthEmbRun) -> None:
    emb = build(
        ClusterEmbConfig,
        clusters=cfg.clusters,
        points_per_cluster=cfg.points_per_cluster,
        dim=cfg.dim,
        center_scale=cfg.center_scale,
        noise_scale=cfg.noise_scale,
        center_offset=cfg.center_offset,
        seed=cfg.seed,
    )
    points = gen_cluster_embeddings(emb)
    write_dense(points.astype(np.float32), cfg.out)
    logger.info(f"Embeddings written to {cfg.out}")
    if cfg.labels is not None:
        write_labels(cluster_labels(emb), cfg.labels)

    print(f"rows: {points.shape[0]}")
    print(f"dim: {points.shape[1]}")


def register(subparsers) -> None:
    parser = add_command(
        subparsers,
        "synth-sbm",
        "stochastic block model graph with labels and splits",
        SynthSbmRun,
        run_synth_sbm,
    )
    parser.add_argument("--communities", type=int)
    parser.add_argument("--nodes-per-community", type=int)
    parser.add_argument("--p-in", type=float)
    parser.add_argument("--p-out", type=float)
    parser.add_argument("--train", type=float, help="train fraction")
    parser.add_argument("--valid", type=float, help="validation fraction")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out-dir", type=Path, help="receives edges.tsv, labels.tsv, splits.tsv")

    parser = add_command(
        subparsers,
        "synth-emb",
        "clustered Gaussian embeddings as a GEF32 file",
        SynthEmbRun,
        run_synth_emb,
    )
    parser.add_argument("--clusters", type=int)
    parser.add_argument("--points-per-cluster", type=int)
    parser.add_argument("--dim", type=int)
    parser.add_argument("--center-scale", type=float)
    parser.add_argument("--noise-scale", type=float)
    parser.add_argument("--center-offset", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", type=Path, help="GEF32 output file")
    parser.add_argument("--labels", type=Path, help="cluster labels output file")
