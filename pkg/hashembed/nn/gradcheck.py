"""Finite-difference gradient checking."""

from typing import Callable, Sequence

import numpy as np

from hashembed.core.exceptions import ContractError
from hashembed.nn.tensor import Tensor


def grad_check(
    function: Callable[..., Tensor],
    inputs: Sequence[Tensor],
    epsilon: float = 1e-6,
) -> float:
    """
    Compare analytic gradients with central differences.

    ``function`` is called as ``function(*inputs)``; the inputs are
    perturbed in place, one coordinate at a time, and restored.

    Returns:
        max over coordinates of |a - n| / max(|a|, |n|, 1e-8)

    Raises:
        ContractError: If the output is not a scalar
    """
    for t in inputs:
        # perturbation goes through a flat view
        t.data = np.ascontiguousarray(t.data)
        t.requires_grad = True
        t.zero_grad()
    out = function(*inputs)
    if out.data.size != 1:
        raise ContractError(f"gradient check needs a scalar function, got shape {out.shape}")
    out.backward()
    analytic = [t.grad if t.grad is not None else np.zeros_like(t.data) for t in inputs]

    worst = 0.0
    for t, grad in zip(inputs, analytic):
        flat = t.data.reshape(-1)
        grad = grad.reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + epsilon
            plus = function(*inputs).item()
            flat[i] = original - epsilon
            minus = function(*inputs).item()
            flat[i] = original
            numeric = (plus - minus) / (2.0 * epsilon)
            denom = max(abs(grad[i]), abs(numeric), 1e-8)
            worst = max(worst, abs(grad[i] - numeric) / denom)
    return worst
