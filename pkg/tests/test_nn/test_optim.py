"""Tests for AdamW."""

import math

import numpy as np
import pytest

from hashembed.core.exceptions import ShapeError
from hashembed.core.models import AdamWConfig
from hashembed.nn.optim import AdamW, AdamWState, adamw_step
from hashembed.nn.tensor import Tensor


def scalar_adamw(p, grads, cfg):
    """Reference update on plain floats."""
    m = v = 0.0
    for t, g in enumerate(grads, start=1):
        m = cfg.beta1 * m + (1 - cfg.beta1) * g
        v = cfg.beta2 * v + (1 - cfg.beta2) * g * g
        m_hat = m / (1 - cfg.beta1**t)
        v_hat = v / (1 - cfg.beta2**t)
        p = p - cfg.lr * m_hat / (math.sqrt(v_hat) + cfg.eps) - cfg.lr * cfg.weight_decay * p
    return p


class TestAdamwStep:
    """Test adamw_step."""

    def test_single_step_by_hand(self):
        """Test one update with weight decay."""
        cfg = AdamWConfig(lr=0.001, weight_decay=0.01)
        p = np.array([1.0])
        state = AdamWState.zeros_like([p])
        adamw_step([p], [np.array([1.0])], state, cfg)
        assert p[0] == pytest.approx(1 - 0.001 / (1 + 1e-8) - 0.00001, abs=1e-12)
        assert p[0] == pytest.approx(0.998990, abs=1e-6)
        assert state.t == 1

    def test_zero_gradient_fixed_point(self):
        """Test that a zero gradient without decay keeps the parameter."""
        p = np.array([2.5, -1.0])
        state = AdamWState.zeros_like([p])
        adamw_step([p], [np.zeros(2)], state, AdamWConfig(weight_decay=0.0))
        np.testing.assert_array_equal(p, [2.5, -1.0])

    def test_matches_scalar_reference(self):
        """Test 100 steps against a scalar implementation."""
        cfg = AdamWConfig(lr=0.01, weight_decay=0.0)
        grads = np.random.default_rng(0).standard_normal(100)
        p = np.array([0.3])
        state = AdamWState.zeros_like([p])
        for g in grads:
            adamw_step([p], [np.array([g])], state, cfg)
        assert p[0] == pytest.approx(scalar_adamw(0.3, grads, cfg), abs=1e-12)
        assert state.t == 100

    def test_decay_is_decoupled(self):
        """Test that weight decay shrinks p independently of the gradient scale."""
        cfg = AdamWConfig(lr=0.1, weight_decay=0.5)
        small, large = np.array([2.0]), np.array([2.0])
        for p, g in ((small, 1e-3), (large, 1e3)):
            adamw_step([p], [np.array([g])], AdamWState.zeros_like([p]), cfg)
        # the normalized step is 1 either way, so both land on 2 - 0.1 - 0.1
        assert small[0] == pytest.approx(1.8, abs=1e-5)
        assert large[0] == pytest.approx(1.8, abs=1e-5)

    def test_state_mismatch(self):
        """Test parameter/state disagreement."""
        p = np.zeros(3)
        with pytest.raises(ShapeError):
            adamw_step([p], [np.zeros(3)], AdamWState.zeros_like([np.zeros(2)]), AdamWConfig())
        with pytest.raises(ShapeError):
            adamw_step([p], [], AdamWState.zeros_like([p]), AdamWConfig())


class TestAdamW:
    """Test the tensor-level optimizer."""

    def test_converges_on_quadratic(self):
        """Test 200 steps on (p - 3)^2 from 0."""
        p = Tensor(np.array([0.0]), requires_grad=True)
        optimizer = AdamW([p], AdamWConfig(lr=0.1, weight_decay=0.0))
        for _ in range(200):
            optimizer.zero_grad()
            loss = ((p - 3.0) * (p - 3.0)).sum()
            loss.backward()
            optimizer.step()
        assert abs(p.data[0] - 3.0) < 0.05

    def test_missing_gradient_counts_as_zero(self):
        """Test that an unused parameter only decays."""
        used = Tensor(np.array([1.0]), requires_grad=True)
        unused = Tensor(np.array([1.0]), requires_grad=True)
        optimizer = AdamW([used, unused], AdamWConfig(lr=0.1, weight_decay=0.0))
        (used * 2.0).sum().backward()
        optimizer.step()
        assert unused.data[0] == 1.0
        assert used.data[0] == pytest.approx(0.9)
