"""Codebook + MLP decoder turning compositional codes into embeddings."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from hashembed.core.exceptions import ConfigError
from hashembed.core.models import DecoderConfig, DecoderVariant
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.nn.functional import affine, codebook_sum, init_affine, relu, scale
from hashembed.nn.tensor import Tensor

CODEBOOK_STREAM = 0
MLP_STREAM = 1


@dataclass
class DecoderParams:
    """
    Decoder weights.

    ``codebooks`` stacks the m codebooks into one (m, c, d_c) tensor. The
    light variant freezes them and rescales their sum by ``w0``; the full
    variant trains them and has no ``w0``.
    """

    config: DecoderConfig
    codebooks: Tensor
    w0: Optional[Tensor] = None
    layers: List[Tuple[Tensor, Tensor]] = field(default_factory=list)

    @property
    def variant(self) -> DecoderVariant:
        return self.config.variant

    def trainable(self) -> List[Tensor]:
        """Tensors updated by the optimizer."""
        params: List[Tensor] = []
        if self.variant is DecoderVariant.FULL:
            params.append(self.codebooks)
        if self.w0 is not None:
            params.append(self.w0)
        for w, b in self.layers:
            params.extend((w, b))
        return params

    def named_tensors(self) -> List[Tuple[str, Tensor]]:
        """Every tensor with a stable name, for checkpoints."""
        named = [("codebooks", self.codebooks)]
        if self.w0 is not None:
            named.append(("w0", self.w0))
        for i, (w, b) in enumerate(self.layers):
            named.extend(((f"layer{i}.weight", w), (f"layer{i}.bias", b)))
        return named


def regenerate_codebooks(cfg: DecoderConfig, dtype=np.float32) -> np.ndarray:
    """Codebooks drawn i.i.d. N(0, 1) / sqrt(d_c) from the config seed."""
    rng = make_rng(derive_seed(cfg.seed, CODEBOOK_STREAM))
    return (rng.standard_normal((cfg.m, cfg.c, cfg.d_c)) / np.sqrt(cfg.d_c)).astype(dtype)


def init_decoder(cfg: DecoderConfig, dtype=np.float32) -> DecoderParams:
    """
    Fresh decoder parameters, deterministic in ``cfg.seed``.

    The MLP maps d_c -> d_m -> ... -> d_m -> d_e through ``cfg.l`` affine
    layers.
    """
    full = cfg.variant is DecoderVariant.FULL
    codebooks = Tensor(regenerate_codebooks(cfg, dtype), requires_grad=full)
    w0 = None if full else Tensor(np.ones(cfg.d_c, dtype=dtype), requires_grad=True)

    rng = make_rng(derive_seed(cfg.seed, MLP_STREAM))
    widths = [cfg.d_c] + [cfg.d_m] * (cfg.l - 1) + [cfg.d_e]
    layers = [init_affine(n_in, n_out, rng, dtype) for n_in, n_out in zip(widths, widths[1:])]
    return DecoderParams(config=cfg, codebooks=codebooks, w0=w0, layers=layers)


def count_parameters(params: DecoderParams, include_biases: bool = False) -> Tuple[int, int]:
    """
    Scalar counts of a decoder.

    Returns:
        (trainable, non_trainable)
    """
    biases = {id(b) for _, b in params.layers}
    trainable = sum(
        t.data.size for t in params.trainable() if include_biases or id(t) not in biases
    )
    frozen = params.codebooks.data.size if params.variant is DecoderVariant.LIGHT else 0
    return trainable, frozen


def decode_codes(int_codes: np.ndarray, params: DecoderParams) -> Tensor:
    """Decode an (B, m) integer code matrix."""
    h = codebook_sum(params.codebooks, int_codes)
    if params.w0 is not None:
        h = scale(h, params.w0)
    last = len(params.layers) - 1
    for i, (w, b) in enumerate(params.layers):
        h = affine(h, w, b)
        if i < last:
            h = relu(h)
    return h


def decode_batch(codes: CodeMatrix, rows: Sequence[int], params: DecoderParams) -> Tensor:
    """
    Embeddings of the selected code rows.

    Raises:
        ConfigError: If the codes and the decoder disagree on (c, m)
        RangeError: If a row index is outside [0, n)
    """
    if (codes.c, codes.m) != (params.config.c, params.config.m):
        raise ConfigError(
            f"codes use (c={codes.c}, m={codes.m}) but the decoder expects "
            f"(c={params.config.c}, m={params.config.m})"
        )
    return decode_codes(codes.unpack_rows(rows), params)
