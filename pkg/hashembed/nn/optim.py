"""AdamW with decoupled weight decay."""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from hashembed.core.exceptions import ShapeError
from hashembed.core.models import AdamWConfig
from hashembed.nn.tensor import Tensor


@dataclass
class AdamWState:
    """First and second moments per parameter plus the shared step count."""

    m: List[np.ndarray] = field(default_factory=list)
    v: List[np.ndarray] = field(default_factory=list)
    t: int = 0

    @classmethod
    def zeros_like(cls, params: Sequence[np.ndarray]) -> "AdamWState":
        return cls(
            m=[np.zeros_like(p) for p in params],
            v=[np.zeros_like(p) for p in params],
        )


def adamw_step(
    params: Sequence[np.ndarray],
    grads: Sequence[np.ndarray],
    state: AdamWState,
    cfg: AdamWConfig,
) -> Tuple[Sequence[np.ndarray], AdamWState]:
    """
    One AdamW update, applied in place.

    p <- p - lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * p)

    Raises:
        ShapeError: If params, grads and state disagree
    """
    if not len(params) == len(grads) == len(state.m) == len(state.v):
        raise ShapeError("params, grads and optimizer state differ in length")
    state.t += 1
    bias1 = 1.0 - cfg.beta1**state.t
    bias2 = 1.0 - cfg.beta2**state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if not p.shape == g.shape == m.shape == v.shape:
            raise ShapeError(f"parameter {p.shape} / gradient {g.shape} / state {m.shape} mismatch")
        m *= cfg.beta1
        m += (1.0 - cfg.beta1) * g
        v *= cfg.beta2
        v += (1.0 - cfg.beta2) * g * g
        update = (m / bias1) / (np.sqrt(v / bias2) + cfg.eps) + cfg.weight_decay * p
        p -= cfg.lr * update
    return params, state


class AdamW:
    """AdamW over a list of trainable tensors."""

    def __init__(self, params: Sequence[Tensor], cfg: AdamWConfig):
        self.params = list(params)
        self.cfg = cfg
        self.state = AdamWState.zeros_like([p.data for p in self.params])

    def step(self) -> None:
        """Update every parameter from its gradient (missing gradients count as zero)."""
        grads = [p.grad if p.grad is not None else np.zeros_like(p.data) for p in self.params]
        adamw_step([p.data for p in self.params], grads, self.state, self.cfg)

    def zero_grad(self) -> None:
        for p in self.params:
            p.zero_grad()
