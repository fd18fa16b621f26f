"""train-recon and train-node commands."""

import csv
from pathlib import Path
from typing import List, Optional

from pydantic import Field

from hashembed.cli.commands import add_command
from hashembed.cli.dependencies import get_node_inputs
from hashembed.cli.run_config import IntList, RunConfig, build
from hashembed.codes.storage import read_codes, read_dense
from hashembed.core.exceptions import ConfigError
from hashembed.core.logger import logger
from hashembed.core.models import (
    AdamWConfig,
    DecoderConfig,
    DecoderVariant,
    EvalResult,
    FeatureMode,
    NodeTrainConfig,
    ReconTrainConfig,
    SageConfig,
)
from hashembed.decoder.checkpoint import load_checkpoint, save_checkpoint
from hashembed.decoder.training import reconstruction_report, train_reconstruction
from hashembed.gnn.io import read_splits
from hashembed.gnn.training import train_node_classification


class OptimizerFields(RunConfig):
    """AdamW flags shared by both trainers."""

    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def optimizer(self, lr: float, weight_decay: float) -> AdamWConfig:
        return build(
            AdamWConfig,
            lr=lr,
            beta1=self.beta1,
            beta2=self.beta2,
            eps=self.eps,
            weight_decay=weight_decay,
        )


class TrainReconRun(OptimizerFields):
    """Settings of ``train-recon``."""

    codes: Path
    targets: Path
    d_c: int = Field(default=512, ge=1)
    d_m: int = Field(default=512, ge=1)
    l: int = Field(default=3, ge=2)
    variant: DecoderVariant = DecoderVariant.LIGHT
    epochs: int = Field(default=1024, ge=1)
    batch_size: int = Field(default=512, ge=1)
    lr: float = 0.001
    weight_decay: float = 0.01
    seed: int = Field(default=0, ge=0, lt=2**64)
    resume: Optional[Path] = None
    out: Path
    loss_log: Optional[Path] = None


class TrainNodeRun(OptimizerFields):
    """Settings of ``train-node``."""

    edges: Path
    labels: Path
    splits: Path
    codes: Optional[Path] = None
    features: FeatureMode = FeatureMode.CODES
    n_nodes: Optional[int] = Field(default=None, ge=1)
    classes: Optional[int] = Field(default=None, ge=1)
    d_c: int = Field(default=512, ge=1)
    d_m: int = Field(default=512, ge=1)
    d_e: int = Field(default=64, ge=1)
    l: int = Field(default=3, ge=2)
    variant: DecoderVariant = DecoderVariant.LIGHT
    hidden: int = Field(default=128, ge=1)
    k: int = Field(default=15, ge=1)
    epochs: int = Field(default=10, ge=1)
    batch_size: int = Field(default=256, ge=1)
    lr: float = 0.01
    weight_decay: float = 0.0
    ks: IntList = (5, 10, 20)
    seed: int = Field(default=0, ge=0, lt=2**64)


def write_loss_log(losses: List[float], path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["epoch", "loss"])
        for epoch, loss in enumerate(losses, start=1):
            writer.writerow([epoch, repr(loss)])
    logger.info(f"Loss log written to {path}")


def run_train_recon(cfg: TrainReconRun) -> None:
    codes = read_codes(cfg.codes)
    targets = read_dense(cfg.targets)
    if targets.shape[0] != codes.n:
        raise ConfigError(f"{codes.n} code rows but {targets.shape[0]} target rows")

    dcfg = build(
        DecoderConfig,
        c=codes.c,
        m=codes.m,
        d_c=cfg.d_c,
        d_m=cfg.d_m,
        d_e=targets.shape[1],
        l=cfg.l,
        variant=cfg.variant,
        seed=cfg.seed,
    )
    params = None
    if cfg.resume is not None:
        params = load_checkpoint(cfg.resume)
        if params.config != dcfg:
            raise ConfigError(f"checkpoint {cfg.resume} was trained with a different decoder config")
    train_cfg = build(
        ReconTrainConfig,
        epochs=cfg.epochs,
        batch_size=cfg.batch_size,
        optimizer=cfg.optimizer(cfg.lr, cfg.weight_decay),
        seed=cfg.seed,
    )

    params, losses = train_reconstruction(codes, targets, train_cfg, dcfg, params)
    save_checkpoint(params, cfg.out)
    loss_log = Path(cfg.loss_log or f"{cfg.out}.loss.csv")
    write_loss_log(losses, loss_log)

    mse, cosine = reconstruction_report(codes, targets, params)
    print(f"final_mse: {mse:.6f}")
    print(f"mean_cosine: {cosine:.6f}")


def _hits(result: EvalResult) -> str:
    return " ".join(f"hit@{k}={rate:.4f}" for k, rate in sorted(result.hits.items()))


def run_train_node(cfg: TrainNodeRun) -> None:
    if cfg.features is FeatureMode.CODES and cfg.codes is None:
        raise ConfigError("code features need --codes")
    codes_path = cfg.codes if cfg.features is FeatureMode.CODES else None
    graph, labels, codes = get_node_inputs(cfg.edges, cfg.labels, codes_path, cfg.n_nodes)
    splits = read_splits(Path(cfg.splits))

    classes = cfg.classes or int(labels.max()) + 1
    ks = tuple(k for k in cfg.ks if k <= classes)
    for k in sorted(set(cfg.ks) - set(ks)):
        logger.warning(f"Dropping hit@{k}: only {classes} classes")

    dcfg = build(
        DecoderConfig,
        # raw features ignore c and m
        c=codes.c if codes is not None else 2,
        m=codes.m if codes is not None else 1,
        d_c=cfg.d_c,
        d_m=cfg.d_m,
        d_e=cfg.d_e,
        l=cfg.l,
        variant=cfg.variant,
        seed=cfg.seed,
    )
    scfg = build(SageConfig, hidden=cfg.hidden, k=cfg.k, classes=classes, seed=cfg.seed)
    train_cfg = build(
        NodeTrainConfig,
        epochs=cfg.epochs,
        batch_size=cfg.batch_size,
        optimizer=cfg.optimizer(cfg.lr, cfg.weight_decay),
        feature_mode=cfg.features,
        ks=ks,
        seed=cfg.seed,
    )

    result = train_node_classification(graph, codes, labels, splits, scfg, dcfg, train_cfg)
    for record in result.history:
        print(
            f"epoch {record.epoch}: train_loss={record.train_loss:.6f} "
            f"valid_accuracy={record.valid.accuracy:.4f}"
        )
    best = result.best
    print(f"best epoch {best.epoch}: test_accuracy={best.test.accuracy:.4f} {_hits(best.test)}".rstrip())


def register(subparsers) -> None:
    parser = add_command(
        subparsers,
        "train-recon",
        "train a decoder to reconstruct embeddings from codes",
        TrainReconRun,
        run_train_recon,
    )
    parser.add_argument("--codes", type=Path, help="GECC code file")
    parser.add_argument("--targets", type=Path, help="GEF32 target embeddings")
    _decoder_arguments(parser)
    parser.add_argument("--resume", type=Path, help="checkpoint to continue from")
    parser.add_argument("--out", type=Path, help="checkpoint manifest to write")
    parser.add_argument("--loss-log", type=Path, help="per-epoch loss CSV (default <out>.loss.csv)")

    parser = add_command(
        subparsers,
        "train-node",
        "train GraphSAGE node classification on decoded codes",
        TrainNodeRun,
        run_train_node,
    )
    parser.add_argument("--edges", type=Path)
    parser.add_argument("--labels", type=Path)
    parser.add_argument("--splits", type=Path)
    parser.add_argument("--codes", type=Path, help="GECC code file (code features)")
    parser.add_argument("--features", choices=[mode.value for mode in FeatureMode])
    parser.add_argument("--n-nodes", type=int)
    parser.add_argument("--classes", type=int, help="class count (default max label + 1)")
    parser.add_argument("--d-e", type=int, help="node embedding width")
    _decoder_arguments(parser)
    parser.add_argument("--hidden", type=int)
    parser.add_argument("--k", type=int, help="neighbors sampled per node and hop")
    parser.add_argument("--ks", help="comma-separated hit@k cutoffs")


def _decoder_arguments(parser) -> None:
    parser.add_argument("--d-c", type=int, help="codebook width")
    parser.add_argument("--d-m", type=int, help="hidden MLP width")
    parser.add_argument("--l", type=int, help="MLP layers")
    parser.add_argument("--variant", choices=[v.value for v in DecoderVariant])
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--lr", type=float)
    parser.add_argument("--weight-decay", type=float)
    parser.add_argument("--beta1", type=float)
    parser.add_argument("--beta2", type=float)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--seed", type=int)
