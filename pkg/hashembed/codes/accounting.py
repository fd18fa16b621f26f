"""Memory and compression-ratio accounting.

Sizes follow the 1024**2-byte megabyte convention. Decoder parameter
counts follow the closed forms of the decoder design: biases are left
out unless ``include_biases`` is set.
"""

from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal
from typing import Dict, Iterable, List, Tuple

from hashembed.core.exceptions import DomainError
from hashembed.core.models import DecoderVariant, MemoryReport, MemorySpec
from hashembed.codes.packing import code_bits

MIB = 1024 * 1024


def to_mib(num_bytes: float) -> float:
    """Bytes to MiB rounded half-up to 2 decimals."""
    return float(Decimal(repr(num_bytes / MIB)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def truncate_ratio(ratio: float) -> float:
    """Ratios are reported rounded down to 2 decimals."""
    return float(Decimal(repr(ratio)).quantize(Decimal("0.01"), rounding=ROUND_DOWN))


def compression_ratio(raw_bytes: float, compressed_bytes: float) -> float:
    """
    Raw size over compressed size.

    Raises:
        DomainError: If ``compressed_bytes`` is not positive
    """
    if compressed_bytes <= 0:
        raise DomainError("compressed size must be positive")
    return raw_bytes / compressed_bytes


def decoder_params(
    c: int,
    m: int,
    d_c: int,
    d_m: int,
    d_e: int,
    l: int,
    variant: DecoderVariant,
    include_biases: bool = False,
) -> Tuple[int, int]:
    """
    Decoder scalar counts.

    Returns:
        (trainable, non_trainable)

    Raises:
        DomainError: If ``l`` is below 2
    """
    if l < 2:
        raise DomainError(f"the decoder needs at least 2 layers, got l={l}")
    mlp = d_c * d_m + (l - 2) * d_m * d_m + d_m * d_e
    if include_biases:
        mlp += (l - 1) * d_m + d_e
    codebooks = m * c * d_c
    if DecoderVariant(variant) is DecoderVariant.LIGHT:
        return d_c + mlp, codebooks
    return codebooks + mlp, 0


def memory_report(spec: MemorySpec) -> MemoryReport:
    """
    Account the memory of raw embeddings against codes plus decoder.

    CPU holds the codes and any frozen codebooks; GPU holds the
    trainable decoder (or the raw table) and the GNN.
    """
    bytes_per_float = spec.f / 8
    raw = spec.n * spec.d_e * bytes_per_float
    codes = spec.n * code_bits(spec.c, spec.m) / 8
    trainable, frozen = decoder_params(
        spec.c, spec.m, spec.d_c, spec.d_m, spec.d_e, spec.l, spec.variant, spec.include_biases
    )
    trainable_bytes = trainable * bytes_per_float
    frozen_bytes = frozen * bytes_per_float
    gnn = spec.gnn_params * bytes_per_float

    gpu_inputs = (raw + gnn, trainable_bytes + gnn)
    return MemoryReport(
        raw_embedding_bytes=raw,
        code_bytes=codes,
        decoder_trainable_params=trainable,
        decoder_nontrainable_params=frozen,
        decoder_trainable_bytes=trainable_bytes,
        decoder_nontrainable_bytes=frozen_bytes,
        decoder_bytes=trainable_bytes + frozen_bytes,
        gnn_bytes=gnn,
        cpu_bytes=codes + frozen_bytes,
        gpu_bytes=trainable_bytes + gnn,
        gpu_ratio_inputs=gpu_inputs,
        gpu_ratio=compression_ratio(*gpu_inputs),
        total_ratio=compression_ratio(raw + gnn, codes + trainable_bytes + frozen_bytes + gnn),
    )


def compression_sweep(spec: MemorySpec, entity_counts: Iterable[int]) -> List[Dict[str, float]]:
    """Total compression ratio as the number of compressed entities grows."""
    rows = []
    for n in entity_counts:
        report = memory_report(spec.model_copy(update={"n": n}))
        rows.append({"n": n, "total_ratio": truncate_ratio(report.total_ratio)})
    return rows
