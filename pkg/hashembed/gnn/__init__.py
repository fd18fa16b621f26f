"""Minibatch GraphSAGE over decoded node codes."""

from hashembed.gnn.features import CodeFeatures, NodeFeatures, RawFeatures
from hashembed.gnn.graph import GraphStore
from hashembed.gnn.io import (
    SPLIT_NAMES,
    read_labels,
    read_splits,
    validate_splits,
    write_labels,
    write_splits,
)
from hashembed.gnn.metrics import evaluate, label_ranks
from hashembed.gnn.sage import (
    SageParams,
    aggregate_mean,
    forward_batch,
    forward_features,
    forward_sampled,
    init_sage,
    sage_layer,
)
from hashembed.gnn.sampling import sample_hops, sample_neighbors
from hashembed.gnn.training import (
    NodeModel,
    NodeTrainResult,
    build_features,
    predict,
    train_node_classification,
)

__all__ = [
    "CodeFeatures",
    "NodeFeatures",
    "RawFeatures",
    "GraphStore",
    "SPLIT_NAMES",
    "read_labels",
    "read_splits",
    "validate_splits",
    "write_labels",
    "write_splits",
    "evaluate",
    "label_ranks",
    "SageParams",
    "aggregate_mean",
    "forward_batch",
    "forward_features",
    "forward_sampled",
    "init_sage",
    "sage_layer",
    "sample_hops",
    "sample_neighbors",
    "NodeModel",
    "NodeTrainResult",
    "build_features",
    "predict",
    "train_node_classification",
]
