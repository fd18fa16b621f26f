"""Differentiable operations used by the decoder and the GNN."""

from typing import Sequence, Union

import numpy as np

from hashembed.core.exceptions import DomainError, RangeError, ShapeError
from hashembed.nn.tensor import Tensor

ArrayLike = Union[Tensor, np.ndarray]


def affine(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """
    y = x w + b with ``b`` broadcast over the batch.

    Raises:
        ShapeError: If shapes disagree
    """
    if x.data.ndim != 2 or w.data.ndim != 2 or b.data.ndim != 1:
        raise ShapeError(f"affine expects 2-D x, 2-D w, 1-D b; got {x.shape}, {w.shape}, {b.shape}")
    if x.shape[1] != w.shape[0] or w.shape[1] != b.shape[0]:
        raise ShapeError(f"affine shape mismatch: x{x.shape} w{w.shape} b{b.shape}")
    out = Tensor.result(x.data @ w.data + b.data, (x, w, b), "affine")

    def _backward():
        x.accumulate(out.grad @ w.data.T)
        w.accumulate(x.data.T @ out.grad)
        b.accumulate(out.grad.sum(axis=0))

    out._backward = _backward
    return out


def relu(x: Tensor) -> Tensor:
    """Elementwise max(0, x); the subgradient at 0 is 0."""
    mask = x.data > 0
    out = Tensor.result(np.where(mask, x.data, 0).astype(x.dtype), (x,), "relu")

    def _backward():
        x.accumulate(out.grad * mask)

    out._backward = _backward
    return out


def mse_loss(pred: Tensor, target: ArrayLike) -> Tensor:
    """Mean over all elements of the squared difference."""
    target_data = target.data if isinstance(target, Tensor) else np.asarray(target)
    if pred.shape != target_data.shape:
        raise ShapeError(f"prediction {pred.shape} and target {target_data.shape} differ")
    diff = pred.data - target_data.astype(pred.dtype)
    out = Tensor.result(np.asarray(np.mean(diff * diff), dtype=pred.dtype), (pred,), "mse")

    def _backward():
        pred.accumulate(out.grad * 2.0 * diff / diff.size)

    out._backward = _backward
    return out


def cross_entropy(logits: Tensor, labels: np.ndarray) -> Tensor:
    """
    Mean negative log-softmax of the true class.

    Raises:
        RangeError: If a label is outside [0, K)
    """
    labels = np.asarray(labels, dtype=np.int64)
    if logits.data.ndim != 2 or labels.shape != (logits.shape[0],):
        raise ShapeError(f"logits {logits.shape} do not match labels {labels.shape}")
    n_classes = logits.shape[1]
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise RangeError(f"labels must lie in [0, {n_classes})")

    shifted = logits.data - logits.data.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1))
    rows = np.arange(len(labels))
    loss = np.mean(log_norm - shifted[rows, labels])
    out = Tensor.result(np.asarray(loss, dtype=logits.dtype), (logits,), "cross_entropy")

    def _backward():
        probs = np.exp(shifted - log_norm[:, None])
        probs[rows, labels] -= 1.0
        logits.accumulate(out.grad * probs / len(labels))

    out._backward = _backward
    return out


def take_rows(x: Tensor, index: np.ndarray) -> Tensor:
    """Gather rows ``x[index]``; gradients scatter-add back."""
    index = np.asarray(index, dtype=np.int64)
    out = Tensor.result(x.data[index], (x,), "take_rows")

    def _backward():
        grad = np.zeros_like(x.data)
        np.add.at(grad, index, out.grad)
        x.accumulate(grad)

    out._backward = _backward
    return out


def codebook_sum(codebooks: Tensor, codes: np.ndarray) -> Tensor:
    """
    Sum of per-position codebook vectors.

    Args:
        codebooks: (m, c, d) stack of codebooks
        codes: (B, m) integer codes

    Returns:
        (B, d) tensor, row b = sum_j codebooks[j, codes[b, j]]
    """
    codes = np.asarray(codes, dtype=np.int64)
    m, c, _ = codebooks.shape
    if codes.ndim != 2 or codes.shape[1] != m:
        raise ShapeError(f"codes of shape {codes.shape} for {m} codebooks")
    if codes.size and (codes.min() < 0 or codes.max() >= c):
        raise RangeError(f"code elements must lie in [0, {c})")
    positions = np.broadcast_to(np.arange(m), codes.shape)
    out = Tensor.result(codebooks.data[positions, codes].sum(axis=1), (codebooks,), "codebook_sum")

    def _backward():
        grad = np.zeros_like(codebooks.data)
        np.add.at(grad, (positions, codes), np.broadcast_to(out.grad[:, None, :], codes.shape + out.grad.shape[1:]))
        codebooks.accumulate(grad)

    out._backward = _backward
    return out


def scale(x: Tensor, w: Tensor) -> Tensor:
    """Multiply every row of ``x`` elementwise by the vector ``w``."""
    if x.data.ndim != 2 or w.shape != (x.shape[1],):
        raise ShapeError(f"cannot scale {x.shape} by {w.shape}")
    out = Tensor.result(x.data * w.data, (x, w), "scale")

    def _backward():
        x.accumulate(out.grad * w.data)
        w.accumulate((out.grad * x.data).sum(axis=0))

    out._backward = _backward
    return out


def group_mean(x: Tensor, k: int) -> Tensor:
    """
    Mean over consecutive groups of ``k`` rows: (B*k, d) -> (B, d).

    Raises:
        DomainError: If ``k`` is below 1
    """
    if k < 1:
        raise DomainError("cannot average an empty group")
    if x.data.ndim != 2 or x.shape[0] % k:
        raise ShapeError(f"{x.shape} does not split into groups of {k} rows")
    groups = x.shape[0] // k
    out = Tensor.result(x.data.reshape(groups, k, -1).mean(axis=1), (x,), "group_mean")

    def _backward():
        x.accumulate(np.repeat(out.grad / k, k, axis=0))

    out._backward = _backward
    return out


def concat(tensors: Sequence[Tensor]) -> Tensor:
    """Concatenate 2-D tensors along columns."""
    if len({t.shape[0] for t in tensors}) != 1:
        raise ShapeError("concatenated tensors must share their row count")
    widths = [t.shape[1] for t in tensors]
    out = Tensor.result(np.concatenate([t.data for t in tensors], axis=1), tensors, "concat")

    def _backward():
        offset = 0
        for t, width in zip(tensors, widths):
            t.accumulate(out.grad[:, offset : offset + width])
            offset += width

    out._backward = _backward
    return out


def init_affine(n_in: int, n_out: int, rng: np.random.Generator, dtype=np.float32):
    """Glorot-uniform weight in +-sqrt(6 / (in + out)) and a zero bias."""
    limit = np.sqrt(6.0 / (n_in + n_out))
    w = Tensor(rng.uniform(-limit, limit, size=(n_in, n_out)).astype(dtype), requires_grad=True)
    b = Tensor(np.zeros(n_out, dtype=dtype), requires_grad=True)
    return w, b
