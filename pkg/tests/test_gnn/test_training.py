"""Tests for node-classification training."""

from itertools import combinations

import numpy as np
import pytest

from hashembed.core.exceptions import ConfigError
from hashembed.core.models import (
    AdamWConfig,
    DecoderConfig,
    DecoderVariant,
    EncoderConfig,
    FeatureMode,
    NodeTrainConfig,
    SageConfig,
    SbmConfig,
)
from hashembed.encoder.hashing import encode, random_codes
from hashembed.gnn.features import CodeFeatures, RawFeatures
from hashembed.gnn.graph import GraphStore
from hashembed.gnn.metrics import evaluate
from hashembed.gnn.training import (
    build_features,
    evaluation_rng,
    predict,
    train_node_classification,
)
from hashembed.sparse.edge_list import edges_to_csr
from hashembed.sparse.sources import InMemoryRowSource
from hashembed.synth.sbm import gen_sbm
from hashembed.synth.splits import gen_splits

CLIQUES, CLIQUE_SIZE = 4, 5


@pytest.fixture
def cliques():
    """
    Four disconnected 5-cliques labeled by clique.

    Self-loops make the adjacency rows of one clique identical, so every
    member gets the same code; the graph store drops them again.
    """
    edges = []
    for c in range(CLIQUES):
        members = range(c * CLIQUE_SIZE, (c + 1) * CLIQUE_SIZE)
        edges.extend(combinations(members, 2))
        edges.extend((v, v) for v in members)
    n = CLIQUES * CLIQUE_SIZE
    adjacency = edges_to_csr(np.array(edges, dtype=np.int64), n, symmetrize=True)
    graph = GraphStore.from_adjacency(adjacency)
    codes = encode(InMemoryRowSource(adjacency), EncoderConfig(c=4, m=8, seed=0))
    labels = np.repeat(np.arange(CLIQUES), CLIQUE_SIZE)
    first = np.arange(0, n, CLIQUE_SIZE)
    splits = {
        "train": np.sort(np.concatenate([first, first + 1, first + 2])),
        "valid": first + 3,
        "test": first + 4,
    }
    return graph, codes, labels, splits


@pytest.fixture
def configs():
    """Small SAGE, decoder and training settings for the cliques."""
    scfg = SageConfig(hidden=16, k=3, classes=CLIQUES)
    dcfg = DecoderConfig(c=4, m=8, d_c=16, d_m=16, d_e=8, variant=DecoderVariant.FULL)
    cfg = NodeTrainConfig(
        epochs=10,
        batch_size=2,
        optimizer=AdamWConfig(lr=0.05, weight_decay=0.0),
        ks=(1, 2),
    )
    return scfg, dcfg, cfg


class TestTrainNodeClassification:
    """Test train_node_classification."""

    def test_cliques_separable(self, cliques, configs):
        """Test perfect test accuracy on disconnected labeled cliques."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        assert len({tuple(row) for row in codes.unpack_all()}) == CLIQUES
        result = train_node_classification(graph, codes, labels, splits, scfg, dcfg, cfg)
        assert len(result.history) == 10
        assert result.test.accuracy == 1.0
        assert result.test.hits[2] == 1.0
        assert result.best.valid.accuracy == max(r.valid.accuracy for r in result.history)

    def test_best_epoch_earliest(self, cliques, configs):
        """Test that ties in validation accuracy keep the first epoch."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        result = train_node_classification(graph, codes, labels, splits, scfg, dcfg, cfg)
        top = max(r.valid.accuracy for r in result.history)
        assert result.best.epoch == next(r.epoch for r in result.history if r.valid.accuracy == top)

    def test_returned_model_has_best_weights(self, cliques, configs):
        """Test that the model is restored to the selected epoch."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        cfg = cfg.model_copy(update={"epochs": 4})
        result = train_node_classification(graph, codes, labels, splits, scfg, dcfg, cfg)
        logits = predict(graph, splits["valid"], result.model, cfg.batch_size, evaluation_rng(cfg.seed))
        assert evaluate(logits, labels[splits["valid"]]).accuracy == result.best.valid.accuracy

    def test_deterministic(self, cliques, configs):
        """Test identical metrics across runs with equal seeds."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        cfg = cfg.model_copy(update={"epochs": 3})
        a = train_node_classification(graph, codes, labels, splits, scfg, dcfg, cfg)
        b = train_node_classification(graph, codes, labels, splits, scfg, dcfg, cfg)
        assert a.history == b.history
        assert a.best.epoch == b.best.epoch

    def test_raw_features(self, cliques, configs):
        """Test the uncompressed embedding table mode."""
        graph, _, labels, splits = cliques
        scfg, dcfg, cfg = configs
        cfg = cfg.model_copy(update={"epochs": 2, "feature_mode": FeatureMode.RAW})
        result = train_node_classification(graph, None, labels, splits, scfg, dcfg, cfg)
        assert isinstance(result.model.features, RawFeatures)
        assert result.model.features.dim == dcfg.d_e
        assert len(result.history) == 2

    def test_empty_split(self, cliques, configs):
        """Test that every split needs nodes."""
        graph, codes, labels, splits = cliques
        splits = {**splits, "valid": np.array([], dtype=np.int64)}
        with pytest.raises(ConfigError):
            train_node_classification(graph, codes, labels, splits, *configs)

    def test_label_count_mismatch(self, cliques, configs):
        """Test one label per node."""
        graph, codes, labels, splits = cliques
        with pytest.raises(ConfigError):
            train_node_classification(graph, codes, labels[:-1], splits, *configs)

    def test_label_beyond_classes(self, cliques, configs):
        """Test labels against the class count."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        with pytest.raises(ConfigError):
            train_node_classification(
                graph, codes, labels, splits, scfg.model_copy(update={"classes": 3}), dcfg, cfg
            )

    def test_cutoff_beyond_classes(self, cliques, configs):
        """Test hit@k cutoffs against the class count."""
        graph, codes, labels, splits = cliques
        scfg, dcfg, cfg = configs
        with pytest.raises(ConfigError):
            train_node_classification(
                graph, codes, labels, splits, scfg, dcfg, cfg.model_copy(update={"ks": (5,)})
            )


class TestBuildFeatures:
    """Test build_features."""

    def test_code_features(self, cliques, configs):
        """Test that code mode wraps a fresh decoder."""
        _, codes, _, _ = cliques
        _, dcfg, _ = configs
        features = build_features(FeatureMode.CODES, 20, dcfg, 0, codes)
        assert isinstance(features, CodeFeatures)
        assert features.dim == 8

    def test_code_mismatches(self, cliques, configs):
        """Test missing codes, wrong row count and wrong (c, m)."""
        _, codes, _, _ = cliques
        _, dcfg, _ = configs
        with pytest.raises(ConfigError):
            build_features(FeatureMode.CODES, 20, dcfg, 0, None)
        with pytest.raises(ConfigError):
            build_features(FeatureMode.CODES, 21, dcfg, 0, codes)
        with pytest.raises(ConfigError):
            build_features(FeatureMode.CODES, 20, dcfg.model_copy(update={"m": 4}), 0, codes)


@pytest.mark.slow
def test_hashing_codes_beat_random_on_sbm():
    """Test hashing codes against random codes on a block model graph."""
    edges, labels = gen_sbm(SbmConfig(communities=4, nodes_per_community=500, p_in=0.05, p_out=0.002))
    n = len(labels)
    adjacency = edges_to_csr(edges, n, symmetrize=True)
    graph = GraphStore.from_adjacency(adjacency)
    splits = gen_splits(n, 0.7, 0.1, seed=0)
    scfg = SageConfig(hidden=128, k=5, classes=4)
    hashing, baseline = [], []
    for seed in range(5):
        ecfg = EncoderConfig(c=2, m=128, seed=seed)
        dcfg = DecoderConfig(c=2, m=128, d_c=128, d_m=64, d_e=64, variant=DecoderVariant.LIGHT, seed=seed)
        cfg = NodeTrainConfig(epochs=10, batch_size=256, seed=seed)
        for codes, sink in (
            (encode(InMemoryRowSource(adjacency), ecfg), hashing),
            (random_codes(n, ecfg), baseline),
        ):
            result = train_node_classification(
                graph, codes, labels, splits, scfg.model_copy(update={"seed": seed}), dcfg, cfg
            )
            sink.append(result.test.accuracy)
    assert np.median(hashing) >= np.median(baseline)
    assert np.median(hashing) >= 0.70
