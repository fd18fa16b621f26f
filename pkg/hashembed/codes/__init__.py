"""Compositional code storage, file formats and memory accounting."""

from hashembed.codes.accounting import (
    compression_ratio,
    compression_sweep,
    decoder_params,
    memory_report,
    to_mib,
    truncate_ratio,
)
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.codes.packing import code_bits, pack_code, pack_codes, unpack_code, unpack_codes
from hashembed.codes.storage import read_codes, read_dense, write_codes, write_dense

__all__ = [
    "CodeMatrix",
    "code_bits",
    "pack_code",
    "pack_codes",
    "unpack_code",
    "unpack_codes",
    "read_codes",
    "write_codes",
    "read_dense",
    "write_dense",
    "memory_report",
    "compression_ratio",
    "compression_sweep",
    "decoder_params",
    "to_mib",
    "truncate_ratio",
]
