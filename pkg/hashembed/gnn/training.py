"""Minibatch node-classification training."""

from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.config import settings
from hashembed.core.exceptions import ConfigError
from hashembed.core.logger import logger
from hashembed.core.models import (
    DecoderConfig,
    EpochMetrics,
    EvalResult,
    FeatureMode,
    NodeTrainConfig,
    SageConfig,
)
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.decoder.model import init_decoder
from hashembed.gnn.features import CodeFeatures, NodeFeatures, RawFeatures
from hashembed.gnn.graph import GraphStore
from hashembed.gnn.io import Splits, validate_splits
from hashembed.gnn.metrics import evaluate
from hashembed.gnn.sage import SageParams, forward_features, init_sage
from hashembed.nn.functional import cross_entropy
from hashembed.nn.optim import AdamW
from hashembed.nn.tensor import Tensor

RAW_FEATURE_STREAM = 3
TRAIN_SAMPLER_STREAM = 4
EVAL_SAMPLER_STREAM = 5


class NodeModel(NamedTuple):
    """Feature provider plus SAGE weights."""

    features: NodeFeatures
    sage: SageParams

    def parameters(self) -> List[Tensor]:
        return [*self.features.parameters(), *self.sage.parameters()]


class NodeTrainResult(NamedTuple):
    """Trained model (best-validation weights), history and the selected epoch."""

    model: NodeModel
    history: List[EpochMetrics]
    best: EpochMetrics

    @property
    def test(self) -> EvalResult:
        return self.best.test


def build_features(
    mode: FeatureMode,
    n: int,
    dcfg: DecoderConfig,
    seed: int,
    codes: Optional[CodeMatrix] = None,
) -> NodeFeatures:
    """
    Feature provider for ``mode``.

    Raises:
        ConfigError: If codes are missing or disagree with ``dcfg`` and ``n``
    """
    if mode is FeatureMode.RAW:
        return RawFeatures(n, dcfg.d_e, derive_seed(seed, RAW_FEATURE_STREAM))
    if codes is None:
        raise ConfigError("code features need a code matrix")
    if codes.n != n:
        raise ConfigError(f"{codes.n} code rows for a graph of {n} nodes")
    if (codes.c, codes.m) != (dcfg.c, dcfg.m):
        raise ConfigError(
            f"codes use (c={codes.c}, m={codes.m}) but the decoder expects (c={dcfg.c}, m={dcfg.m})"
        )
    return CodeFeatures(codes, init_decoder(dcfg))


def predict(
    graph: GraphStore,
    nodes: np.ndarray,
    model: NodeModel,
    batch_size: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Logits for ``nodes``, computed batch by batch."""
    chunks = [
        forward_features(graph, nodes[start : start + batch_size], *model, rng).data
        for start in range(0, len(nodes), batch_size)
    ]
    return np.concatenate(chunks)


def evaluation_rng(seed: int) -> np.random.Generator:
    """Sampler reset before every evaluation so metrics are reproducible."""
    return make_rng(derive_seed(seed ^ settings.eval_seed_offset, EVAL_SAMPLER_STREAM))


def train_node_classification(
    graph: GraphStore,
    codes: Optional[CodeMatrix],
    labels: np.ndarray,
    splits: Splits,
    scfg: SageConfig,
    dcfg: DecoderConfig,
    cfg: NodeTrainConfig,
) -> NodeTrainResult:
    """
    Train GraphSAGE (and the decoder, in code mode) end to end.

    Neighbors are resampled for every training batch; evaluation samples
    from a generator reset to a fixed seed. The reported epoch is the one
    with the highest validation accuracy (earliest on ties), and the
    returned model carries that epoch's weights.

    Args:
        graph: Graph to sample from
        codes: Node codes; unused when ``cfg.feature_mode`` is raw
        labels: (n,) class per node, -1 where unlabeled
        splits: Node ids per split (train, valid, test)
        scfg: SAGE shape and sampling fan-out
        dcfg: Decoder shape (d_e sets the raw table width too)
        cfg: Epochs, batch size, optimizer, feature mode, hit@k cutoffs

    Returns:
        Model, per-epoch metrics and the best-validation epoch

    Raises:
        ConfigError: If a split is empty, splits overlap, a split node is
            unlabeled, a label is not below the class count, or a cutoff
            exceeds it
    """
    labels = np.asarray(labels, dtype=np.int64)
    if len(labels) != graph.n:
        raise ConfigError(f"{len(labels)} labels for a graph of {graph.n} nodes")
    validate_splits(splits, labels)
    if labels.max() >= scfg.classes:
        raise ConfigError(f"label {labels.max()} is not below the class count {scfg.classes}")
    if any(not 1 <= k <= scfg.classes for k in cfg.ks):
        raise ConfigError(f"hit@k cutoffs {cfg.ks} must lie in [1, {scfg.classes}]")

    features = build_features(cfg.feature_mode, graph.n, dcfg, cfg.seed, codes)
    model = NodeModel(features, init_sage(scfg, features.dim, dtype=np.float32))
    params = model.parameters()
    optimizer = AdamW(params, cfg.optimizer)
    rng = make_rng(cfg.seed)
    sampler = make_rng(derive_seed(cfg.seed, TRAIN_SAMPLER_STREAM))
    train = splits["train"]

    history: List[EpochMetrics] = []
    best: Optional[EpochMetrics] = None
    best_weights: Sequence[np.ndarray] = ()
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(train)
        total = 0.0
        for start in range(0, len(order), cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            optimizer.zero_grad()
            logits = forward_features(graph, batch, *model, sampler)
            loss = cross_entropy(logits, labels[batch])
            loss.backward()
            optimizer.step()
            total += loss.item() * len(batch)

        valid = _evaluate_split(graph, splits["valid"], labels, model, cfg)
        test = _evaluate_split(graph, splits["test"], labels, model, cfg)
        record = EpochMetrics(epoch=epoch, train_loss=total / len(train), valid=valid, test=test)
        history.append(record)
        logger.info(
            f"Epoch {epoch}/{cfg.epochs}: loss={record.train_loss:.4f} "
            f"valid_acc={valid.accuracy:.4f} test_acc={test.accuracy:.4f}"
        )
        if best is None or valid.accuracy > best.valid.accuracy:
            best = record
            best_weights = [p.data.copy() for p in params]

    for p, weights in zip(params, best_weights):
        p.data = weights
    logger.info(f"Best validation accuracy {best.valid.accuracy:.4f} at epoch {best.epoch}")
    return NodeTrainResult(model, history, best)


def _evaluate_split(
    graph: GraphStore,
    nodes: np.ndarray,
    labels: np.ndarray,
    model: NodeModel,
    cfg: NodeTrainConfig,
) -> EvalResult:
    logits = predict(graph, nodes, model, cfg.batch_size, evaluation_rng(cfg.seed))
    return evaluate(logits, labels[nodes], cfg.ks)
