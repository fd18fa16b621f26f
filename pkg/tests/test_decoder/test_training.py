"""Tests for reconstruction training."""

import numpy as np
import pytest

from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.exceptions import ShapeError
from hashembed.core.models import (
    AdamWConfig,
    ClusterEmbConfig,
    DecoderConfig,
    DecoderVariant,
    EncoderConfig,
    ReconTrainConfig,
)
from hashembed.decoder.model import init_decoder, regenerate_codebooks
from hashembed.decoder.training import reconstruct, reconstruction_report, train_reconstruction
from hashembed.encoder.hashing import encode, random_codes
from hashembed.sparse.sources import InMemoryRowSource
from hashembed.synth.clusters import gen_cluster_embeddings


@pytest.fixture
def tiny_problem():
    """64 random code rows over c=4, m=4 with 6-dim targets."""
    rng = np.random.default_rng(0)
    codes = CodeMatrix.from_codes(rng.integers(0, 4, size=(64, 4)), c=4)
    targets = rng.standard_normal((64, 6))
    dcfg = DecoderConfig(c=4, m=4, d_c=16, d_m=16, d_e=6, l=3, seed=2)
    return codes, targets, dcfg


class TestTrainReconstruction:
    """Test train_reconstruction."""

    def test_memorizes_one_vector(self):
        """Test that the full variant fits a single target."""
        codes = CodeMatrix.from_codes(np.array([[1, 0]]), c=2)
        target = np.random.default_rng(1).standard_normal((1, 4))
        dcfg = DecoderConfig(c=2, m=2, d_c=16, d_m=16, d_e=4, variant=DecoderVariant.FULL)
        cfg = ReconTrainConfig(epochs=500, batch_size=1, optimizer=AdamWConfig(lr=0.01, weight_decay=0.0))
        _, losses = train_reconstruction(codes, target, cfg, dcfg)
        assert losses[-1] < 1e-3

    def test_loss_curve(self, tiny_problem):
        """Test that the curve is finite and ends below its start."""
        codes, targets, dcfg = tiny_problem
        _, losses = train_reconstruction(codes, targets, ReconTrainConfig(epochs=1024), dcfg)
        assert len(losses) == 1024
        assert np.all(np.isfinite(losses))
        assert losses[-1] <= losses[0]

    def test_deterministic(self, tiny_problem):
        """Test that equal seeds give equal curves and weights."""
        codes, targets, dcfg = tiny_problem
        cfg = ReconTrainConfig(epochs=5, batch_size=16, seed=4)
        a, loss_a = train_reconstruction(codes, targets, cfg, dcfg)
        b, loss_b = train_reconstruction(codes, targets, cfg, dcfg)
        assert loss_a == loss_b
        for (_, ta), (_, tb) in zip(a.named_tensors(), b.named_tensors()):
            np.testing.assert_array_equal(ta.data, tb.data)

    def test_light_codebooks_frozen(self, tiny_problem):
        """Test that light codebooks remain regenerable from the seed."""
        codes, targets, dcfg = tiny_problem
        params, _ = train_reconstruction(codes, targets, ReconTrainConfig(epochs=3, batch_size=8), dcfg)
        np.testing.assert_array_equal(params.codebooks.data, regenerate_codebooks(dcfg))
        assert not np.array_equal(params.w0.data, np.ones(dcfg.d_c))

    def test_resume_continues(self, tiny_problem):
        """Test that passing parameters trains them further in place."""
        codes, targets, dcfg = tiny_problem
        cfg = ReconTrainConfig(epochs=50, batch_size=16)
        params, first = train_reconstruction(codes, targets, cfg, dcfg)
        again, second = train_reconstruction(codes, targets, cfg, dcfg, params=params)
        assert again is params
        assert second[0] < first[0]

    def test_shape_errors(self, tiny_problem):
        """Test target rows and width."""
        codes, targets, dcfg = tiny_problem
        cfg = ReconTrainConfig(epochs=1)
        with pytest.raises(ShapeError):
            train_reconstruction(codes, targets[:10], cfg, dcfg)
        with pytest.raises(ShapeError):
            train_reconstruction(codes, targets[:, :5], cfg, dcfg)

    def test_report(self, tiny_problem):
        """Test mse and cosine of a perfect and an untrained decoder."""
        codes, targets, dcfg = tiny_problem
        params = init_decoder(dcfg)
        recon = reconstruct(codes, params, batch_size=10)
        assert recon.shape == (64, 6)
        mse, cosine = reconstruction_report(codes, recon, params)
        assert mse == pytest.approx(0.0, abs=1e-12)
        assert cosine == pytest.approx(1.0, abs=1e-6)


@pytest.mark.slow
def test_hashing_codes_reconstruct_better_than_random():
    """Test that locality-preserving codes beat random codes on clustered targets."""
    enc_losses, rand_losses = [], []
    for seed in range(5):
        targets = gen_cluster_embeddings(
            ClusterEmbConfig(clusters=8, points_per_cluster=125, dim=32, seed=seed)
        )
        ecfg = EncoderConfig(c=16, m=8, seed=seed)
        dcfg = DecoderConfig(c=16, m=8, d_c=64, d_m=64, d_e=32, variant=DecoderVariant.FULL, seed=seed)
        cfg = ReconTrainConfig(epochs=256, batch_size=256, seed=seed)
        hashed = encode(InMemoryRowSource.from_dense(targets), ecfg)
        enc_losses.append(train_reconstruction(hashed, targets, cfg, dcfg)[1][-1])
        rand_losses.append(train_reconstruction(random_codes(1000, ecfg), targets, cfg, dcfg)[1][-1])
    assert np.median(enc_losses) < np.median(rand_losses)
