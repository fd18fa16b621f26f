"""Tests for accuracy and hit@k."""

import numpy as np
import pytest

from hashembed.core.exceptions import DomainError, RangeError, ShapeError
from hashembed.gnn.metrics import evaluate, label_ranks
from hashembed.nn.tensor import Tensor


class TestEvaluate:
    """Test evaluate."""

    def test_perfect_logits(self):
        """Test logits peaked on the true class."""
        labels = np.array([0, 2, 1, 2])
        logits = np.eye(3)[labels] * 5.0
        result = evaluate(logits, labels, ks=[1, 2, 3])
        assert result.accuracy == 1.0
        assert result.hits == {1: 1.0, 2: 1.0, 3: 1.0}

    def test_hit_at_k_full(self):
        """Test that hit@K is always 1."""
        rng = np.random.default_rng(0)
        logits = rng.standard_normal((50, 6))
        assert evaluate(logits, rng.integers(0, 6, size=50), ks=[6]).hits[6] == 1.0

    def test_tensor_input(self):
        """Test that Tensor logits are accepted."""
        result = evaluate(Tensor(np.array([[0.1, 0.9], [0.8, 0.2]])), np.array([1, 1]))
        assert result.accuracy == 0.5
        assert result.hits == {}

    def test_ties_favor_lower_class(self):
        """Test the argmax tie rule."""
        logits = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
        np.testing.assert_array_equal(label_ranks(logits, np.array([0, 1])), [0, 1])
        assert evaluate(logits, np.array([0, 1]), ks=[2]).hits == {2: 1.0}
        assert evaluate(logits, np.array([0, 1])).accuracy == 0.5

    def test_random_logits_hit_at_half(self):
        """Test hit@5 of uniform ranks with K=10."""
        rng = np.random.default_rng(1)
        logits = rng.standard_normal((10_000, 10))
        result = evaluate(logits, rng.integers(0, 10, size=10_000), ks=[5])
        assert result.hits[5] == pytest.approx(0.5, abs=0.02)

    def test_hit_at_one_equals_accuracy_and_monotone(self):
        """Test hit@1 = accuracy and hit@k non-decreasing over many draws."""
        rng = np.random.default_rng(2)
        for _ in range(1000):
            n, k = int(rng.integers(1, 20)), int(rng.integers(2, 8))
            # rounded logits make ties common
            logits = np.round(rng.standard_normal((n, k)), 1)
            result = evaluate(logits, rng.integers(0, k, size=n), ks=range(1, k + 1))
            assert result.hits[1] == result.accuracy
            values = [result.hits[i] for i in range(1, k + 1)]
            assert values == sorted(values)

    def test_errors(self):
        """Test cutoff, label, size and shape checks."""
        logits = np.zeros((2, 3))
        with pytest.raises(DomainError):
            evaluate(logits, np.array([0, 1]), ks=[4])
        with pytest.raises(DomainError):
            evaluate(logits, np.array([0, 1]), ks=[0])
        with pytest.raises(DomainError):
            evaluate(np.zeros((0, 3)), np.array([], dtype=np.int64))
        with pytest.raises(RangeError):
            evaluate(logits, np.array([0, 3]))
        with pytest.raises(ShapeError):
            evaluate(logits, np.array([0]))
