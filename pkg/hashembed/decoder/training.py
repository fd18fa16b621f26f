"""Reconstruction training of the decoder against target embeddings."""

from typing import List, Optional, Tuple

import numpy as np

from hashembed.core.exceptions import ConfigError, ShapeError
from hashembed.core.logger import logger
from hashembed.core.models import DecoderConfig, ReconTrainConfig
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.decoder.model import DecoderParams, decode_batch, init_decoder
from hashembed.core.seeding import make_rng
from hashembed.nn.functional import mse_loss
from hashembed.nn.optim import AdamW


def _check_inputs(codes: CodeMatrix, targets: np.ndarray, dcfg: DecoderConfig) -> None:
    if targets.ndim != 2 or targets.shape[0] != codes.n:
        raise ShapeError(f"{targets.shape} targets for {codes.n} code rows")
    if targets.shape[1] != dcfg.d_e:
        raise ShapeError(f"target dimension {targets.shape[1]} differs from d_e={dcfg.d_e}")
    if (codes.c, codes.m) != (dcfg.c, dcfg.m):
        raise ConfigError(
            f"codes use (c={codes.c}, m={codes.m}) but the decoder expects (c={dcfg.c}, m={dcfg.m})"
        )


def train_reconstruction(
    codes: CodeMatrix,
    targets: np.ndarray,
    cfg: ReconTrainConfig,
    dcfg: DecoderConfig,
    params: Optional[DecoderParams] = None,
) -> Tuple[DecoderParams, List[float]]:
    """
    Fit a decoder so that decoded codes reproduce the target rows.

    Args:
        codes: Codes of the n entities
        targets: (n, d_e) target embeddings
        cfg: Epochs, batch size, optimizer and shuffling seed
        dcfg: Decoder shape
        params: Starting parameters (fresh ones from ``dcfg`` when omitted)

    Returns:
        Trained parameters and the per-epoch mean loss

    Raises:
        ShapeError: If targets do not match the codes or d_e
    """
    targets = np.asarray(targets, dtype=np.float32)
    _check_inputs(codes, targets, dcfg)
    params = params or init_decoder(dcfg)
    optimizer = AdamW(params.trainable(), cfg.optimizer)
    rng = make_rng(cfg.seed)
    report_every = max(1, cfg.epochs // 10)

    losses: List[float] = []
    for epoch in range(cfg.epochs):
        order = rng.permutation(codes.n)
        total = 0.0
        for start in range(0, codes.n, cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            optimizer.zero_grad()
            loss = mse_loss(decode_batch(codes, batch, params), targets[batch])
            loss.backward()
            optimizer.step()
            total += loss.item() * len(batch)
        losses.append(total / codes.n)
        if (epoch + 1) % report_every == 0 or epoch == 0:
            logger.info(f"Epoch {epoch + 1}/{cfg.epochs}: mse={losses[-1]:.6f}")
    return params, losses


def reconstruct(
    codes: CodeMatrix, params: DecoderParams, batch_size: int = 4096
) -> np.ndarray:
    """Decode every code row into an (n, d_e) array."""
    out = np.empty((codes.n, params.config.d_e), dtype=params.codebooks.dtype)
    for start in range(0, codes.n, batch_size):
        rows = np.arange(start, min(start + batch_size, codes.n))
        out[rows] = decode_batch(codes, rows, params).data
    return out


def reconstruction_report(
    codes: CodeMatrix, targets: np.ndarray, params: DecoderParams
) -> Tuple[float, float]:
    """
    Quality of a trained decoder.

    Returns:
        (mean squared error, mean cosine similarity between reconstructed
        and target rows)
    """
    targets = np.asarray(targets, dtype=np.float64)
    recon = reconstruct(codes, params).astype(np.float64)
    mse = float(np.mean((recon - targets) ** 2))
    norms = np.linalg.norm(recon, axis=1) * np.linalg.norm(targets, axis=1)
    dots = np.einsum("ij,ij->i", recon, targets)
    cosine = np.divide(dots, norms, out=np.zeros_like(dots), where=norms > 0)
    return mse, float(cosine.mean())
