"""Tests for the hashing encoder."""

import numpy as np
import pytest

from hashembed.core.exceptions import ConfigError, DomainError, ShapeError
from hashembed.core.models import EncoderConfig, ThresholdMode
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.codes.storage import write_dense
from hashembed.encoder.hashing import (
    encode,
    project,
    random_codes,
    random_vector,
    select_threshold,
)
from hashembed.sparse.csr import CsrMatrix
from hashembed.sparse.sources import DenseFileRowSource, InMemoryRowSource


def dense_oracle(a: np.ndarray, cfg: EncoderConfig) -> np.ndarray:
    """Full matmul, sort-based threshold and strict comparison, bit by bit."""
    bits = np.zeros((len(a), cfg.n_bit), dtype=bool)
    for i in range(cfg.n_bit):
        v = make_rng(derive_seed(cfg.seed, i)).standard_normal(a.shape[1])
        u = a @ v
        if cfg.threshold_mode is ThresholdMode.MEDIAN:
            t = np.sort(u)[(len(u) - 1) // 2]
        else:
            t = 0.0
        bits[:, i] = u > t
    return bits


def sparse_random(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    a = rng.standard_normal((n, d))
    a[rng.random((n, d)) < 0.4] = 0.0
    return a


class TestRandomVector:
    """Test random_vector."""

    def test_deterministic(self):
        """Test that equal seeds repeat."""
        np.testing.assert_array_equal(random_vector(3, 7), random_vector(3, 7))

    def test_seed_sensitivity(self):
        """Test that different seeds differ."""
        assert not np.array_equal(random_vector(3, 1), random_vector(3, 2))

    def test_standard_normal_moments(self):
        """Test sample mean and std on 100,000 draws."""
        v = random_vector(100_000, 1)
        assert abs(v.mean()) < 0.02
        assert abs(v.std() - 1.0) < 0.02

    def test_zero_dimension(self):
        """Test that d must be positive."""
        with pytest.raises(DomainError):
            random_vector(0, 1)


class TestSelectThreshold:
    """Test select_threshold."""

    def test_odd_length_median(self):
        """Test the middle element."""
        assert select_threshold(np.array([3.0, 1.0, 2.0]), ThresholdMode.MEDIAN) == 2.0

    def test_even_length_lower_middle(self):
        """Test the lower-middle convention."""
        assert select_threshold(np.array([4.0, 1.0, 3.0, 2.0]), ThresholdMode.MEDIAN) == 2.0

    def test_matches_sort_oracle_and_keeps_input(self):
        """Test 10,001 values against a full sort."""
        u = np.random.default_rng(5).standard_normal(10_001)
        before = u.copy()
        assert select_threshold(u, ThresholdMode.MEDIAN) == np.sort(u)[5000]
        np.testing.assert_array_equal(u, before)

    def test_zero_mode(self):
        """Test that the zero mode ignores the data."""
        assert select_threshold(np.array([5.0, 6.0]), ThresholdMode.ZERO) == 0.0

    def test_empty(self):
        """Test that an empty vector has no threshold."""
        with pytest.raises(DomainError):
            select_threshold(np.array([]), ThresholdMode.MEDIAN)


class TestEncode:
    """Test encode."""

    @pytest.fixture
    def matrix(self):
        """A 6x4 random dense matrix."""
        return np.random.default_rng(11).standard_normal((6, 4))

    def test_matches_dense_oracle(self, matrix):
        """Test the 6x4, c=4, m=3, seed=11 instance."""
        cfg = EncoderConfig(c=4, m=3, seed=11)
        codes = encode(InMemoryRowSource.from_dense(matrix), cfg)
        np.testing.assert_array_equal(codes.to_bool(), dense_oracle(matrix, cfg))
        assert (codes.n, codes.c, codes.m, codes.seed) == (6, 4, 3, 11)

    @pytest.mark.parametrize("mode", [ThresholdMode.MEDIAN, ThresholdMode.ZERO])
    def test_random_oracle_instances(self, mode):
        """Test 50 random small instances bit for bit."""
        rng = np.random.default_rng(2024)
        for _ in range(50):
            n, d = int(rng.integers(1, 65)), int(rng.integers(1, 17))
            c = int(2 ** rng.integers(1, 5))
            cfg = EncoderConfig(
                c=c, m=int(rng.integers(1, 9)), seed=int(rng.integers(0, 2**63)), threshold_mode=mode
            )
            a = sparse_random(rng, n, d)
            codes = encode(InMemoryRowSource.from_dense(a, block_rows=7), cfg)
            np.testing.assert_array_equal(codes.to_bool(), dense_oracle(a, cfg))

    def test_identical_rows_give_all_false(self):
        """Test that ties at the median map to False."""
        a = np.tile([1.0, -2.0, 0.5], (5, 1))
        codes = encode(InMemoryRowSource.from_dense(a), EncoderConfig(c=4, m=4, seed=3))
        assert not codes.to_bool().any()

    def test_median_balance(self):
        """Test that each bit column has floor(n/2) ones without ties."""
        a = np.random.default_rng(8).standard_normal((31, 6))
        bits = encode(InMemoryRowSource.from_dense(a), EncoderConfig(c=16, m=4, seed=1)).to_bool()
        np.testing.assert_array_equal(bits.sum(axis=0), np.full(16, 15))

    def test_streaming_matches_in_memory(self, tmp_path):
        """Test that a GEF32-streamed source gives the same codes."""
        a = sparse_random(np.random.default_rng(4), 50, 9).astype(np.float32)
        path = tmp_path / "a.gef32"
        write_dense(a, path)
        cfg = EncoderConfig(c=16, m=6, seed=99)
        streamed = encode(DenseFileRowSource(path, block_rows=8), cfg)
        in_memory = encode(InMemoryRowSource.from_dense(a, block_rows=64), cfg)
        assert streamed.same_bits(in_memory)

    def test_worker_count_does_not_matter(self, matrix):
        """Test that threaded encoding is bitwise identical."""
        cfg = EncoderConfig(c=8, m=5, seed=6)
        source = InMemoryRowSource.from_dense(matrix)
        assert encode(source, cfg, workers=4).same_bits(encode(source, cfg, workers=1))

    def test_random_mode_rejected(self, matrix):
        """Test that the baseline mode does not go through encode."""
        cfg = EncoderConfig(c=2, m=2, seed=0, threshold_mode=ThresholdMode.RANDOM)
        with pytest.raises(ConfigError):
            encode(InMemoryRowSource.from_dense(matrix), cfg)

    def test_width_mismatch(self):
        """Test that projections need matching widths."""
        source = InMemoryRowSource(CsrMatrix.from_dense(np.ones((2, 3))))
        with pytest.raises(ShapeError):
            project(source, np.ones(4))

    def test_locality(self):
        """Test that closer rows share more bits on average."""
        x = np.array([1.0, 0.0, 0.0, 0.0])
        y = np.array([0.9, 0.3, 0.0, 0.0])
        z = np.array([0.1, 1.0, 0.2, 0.0])
        source = InMemoryRowSource.from_dense(np.vstack([x, y, z]))
        near = far = 0
        for seed in range(1000):
            bits = encode(source, EncoderConfig(c=2, m=8, seed=seed, threshold_mode=ThresholdMode.ZERO)).to_bool()
            near += np.sum(bits[0] != bits[1])
            far += np.sum(bits[0] != bits[2])
        assert near <= far


class TestRandomCodes:
    """Test random_codes."""

    def test_deterministic(self):
        """Test repeat calls."""
        cfg = EncoderConfig(c=2, m=1, seed=3)
        assert random_codes(4, cfg).same_bits(random_codes(4, cfg))

    def test_range_and_mode(self):
        """Test elements below c over 10,000 rows."""
        codes = random_codes(10_000, EncoderConfig(c=8, m=5, seed=1))
        assert codes.unpack_all().max() < 8
        assert codes.threshold_mode is ThresholdMode.RANDOM

    def test_bits_are_balanced(self):
        """Test per-bit ones fraction on 100,000 rows."""
        bits = random_codes(100_000, EncoderConfig(c=2, m=4, seed=0)).to_bool()
        np.testing.assert_allclose(bits.mean(axis=0), 0.5, atol=0.01)
