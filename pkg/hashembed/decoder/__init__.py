"""Compositional-code decoder."""

from hashembed.decoder.checkpoint import load_checkpoint, save_checkpoint
from hashembed.decoder.model import (
    DecoderParams,
    count_parameters,
    decode_batch,
    decode_codes,
    init_decoder,
    regenerate_codebooks,
)
from hashembed.decoder.training import reconstruct, reconstruction_report, train_reconstruction

__all__ = [
    "DecoderParams",
    "count_parameters",
    "decode_batch",
    "decode_codes",
    "init_decoder",
    "regenerate_codebooks",
    "load_checkpoint",
    "save_checkpoint",
    "reconstruct",
    "reconstruction_report",
    "train_reconstruction",
]
