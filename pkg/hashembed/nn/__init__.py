"""Minimal dense tensors, layers, losses and the AdamW optimizer."""

from hashembed.nn.functional import (
    affine,
    codebook_sum,
    concat,
    cross_entropy,
    group_mean,
    init_affine,
    mse_loss,
    relu,
    scale,
    take_rows,
)
from hashembed.nn.gradcheck import grad_check
from hashembed.nn.optim import AdamW, AdamWState, adamw_step
from hashembed.nn.tensor import Tensor

__all__ = [
    "Tensor",
    "affine",
    "codebook_sum",
    "concat",
    "cross_entropy",
    "group_mean",
    "init_affine",
    "mse_loss",
    "relu",
    "scale",
    "take_rows",
    "grad_check",
    "AdamW",
    "AdamWState",
    "adamw_step",
]
