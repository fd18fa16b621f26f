"""Classification metrics."""

from typing import Iterable, Union

import numpy as np

from hashembed.core.exceptions import DomainError, RangeError, ShapeError
from hashembed.core.models import EvalResult
from hashembed.nn.tensor import Tensor


def label_ranks(logits: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """
    Zero-based rank of each true label among the class logits.

    Ties rank the lower class id first, consistent with argmax.
    """
    target = logits[np.arange(len(labels)), labels][:, None]
    classes = np.arange(logits.shape[1])[None, :]
    above = (logits > target).sum(axis=1)
    tied_before = ((logits == target) & (classes < labels[:, None])).sum(axis=1)
    return above + tied_before


def evaluate(
    logits: Union[Tensor, np.ndarray], labels: np.ndarray, ks: Iterable[int] = ()
) -> EvalResult:
    """
    Accuracy and hit@k over a set of predictions.

    Args:
        logits: (N, K) class scores
        labels: (N,) true classes
        ks: Cutoffs for hit@k; each must lie in [1, K]

    Raises:
        DomainError: If N is 0 or a cutoff is outside [1, K]
        RangeError: If a label is outside [0, K)
    """
    scores = logits.data if isinstance(logits, Tensor) else np.asarray(logits)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.ndim != 2 or scores.shape[0] != len(labels):
        raise ShapeError(f"logits {scores.shape} do not match {len(labels)} labels")
    n, n_classes = scores.shape
    if n == 0:
        raise DomainError("cannot evaluate an empty prediction set")
    if labels.min() < 0 or labels.max() >= n_classes:
        raise RangeError(f"label outside [0, {n_classes})")
    ks = sorted(set(ks))
    for k in ks:
        if not 1 <= k <= n_classes:
            raise DomainError(f"hit@{k} is undefined with {n_classes} classes")

    ranks = label_ranks(scores, labels)
    return EvalResult(
        accuracy=float(np.mean(ranks == 0)),
        hits={k: float(np.mean(ranks < k)) for k in ks},
    )
