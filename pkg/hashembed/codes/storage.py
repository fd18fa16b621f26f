"""On-disk formats: GECC code files and GEF32 dense float matrices.

All integers are little-endian.

GECC: magic "GECC", version u32, n u64, c u32, m u32, seed u64,
threshold mode u8, 7 reserved zero bytes, then n packed rows.

GEF32: magic "GEF32", rows u64, cols u32, then row-major float32 data.
"""

import struct
from pathlib import Path
from typing import BinaryIO, Tuple, Union

import numpy as np

from hashembed.core.exceptions import CodeFormatError, ShapeError
from hashembed.core.logger import logger
from hashembed.core.models import ThresholdMode, is_power_of_two
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.codes.packing import row_bytes

CODE_MAGIC = b"GECC"
CODE_VERSION = 1
CODE_HEADER = struct.Struct("<4sIQIIQB7s")

DENSE_MAGIC = b"GEF32"
DENSE_HEADER = struct.Struct("<5sQI")

Sink = Union[str, Path, BinaryIO]


def _write(sink: Sink, payload: bytes) -> None:
    if isinstance(sink, (str, Path)):
        Path(sink).write_bytes(payload)
    else:
        sink.write(payload)


def _read(source: Sink) -> bytes:
    if isinstance(source, (str, Path)):
        return Path(source).read_bytes()
    return source.read()


def encode_codes(codes: CodeMatrix) -> bytes:
    """Serialize a code matrix to GECC bytes."""
    header = CODE_HEADER.pack(
        CODE_MAGIC,
        CODE_VERSION,
        codes.n,
        codes.c,
        codes.m,
        codes.seed,
        codes.threshold_mode.code,
        bytes(7),
    )
    return header + codes.bits.tobytes()


def decode_codes(data: bytes) -> CodeMatrix:
    """
    Parse GECC bytes.

    Raises:
        CodeFormatError: On bad magic, version mismatch, bad header fields
            or a payload whose length does not match the header
    """
    if len(data) < CODE_HEADER.size:
        raise CodeFormatError("truncated header", offset=len(data))
    magic, version, n, c, m, seed, mode_tag, reserved = CODE_HEADER.unpack_from(data)
    if magic != CODE_MAGIC:
        raise CodeFormatError(f"bad magic {magic!r}", offset=0)
    if version != CODE_VERSION:
        raise CodeFormatError(f"unsupported version {version}", offset=4)
    if not is_power_of_two(c) or c < 2:
        raise CodeFormatError(f"cardinality {c} is not a power of 2", offset=16)
    if m < 1:
        raise CodeFormatError("code length must be at least 1", offset=20)
    try:
        mode = ThresholdMode.from_code(mode_tag)
    except ValueError:
        raise CodeFormatError(f"unknown threshold mode {mode_tag}", offset=32) from None
    if reserved != bytes(7):
        raise CodeFormatError("reserved bytes are not zero", offset=33)

    width = row_bytes(c, m)
    payload = data[CODE_HEADER.size :]
    expected = n * width
    if len(payload) < expected:
        raise CodeFormatError(
            f"truncated payload: {len(payload)} of {expected} bytes",
            offset=CODE_HEADER.size + len(payload),
        )
    if len(payload) > expected:
        raise CodeFormatError("trailing bytes after payload", offset=CODE_HEADER.size + expected)

    bits = np.frombuffer(payload, dtype=np.uint8).reshape(n, width)
    try:
        return CodeMatrix(n, c, m, bits.copy(), seed, mode)
    except ShapeError as e:
        raise CodeFormatError(str(e), offset=CODE_HEADER.size) from None


def write_codes(codes: CodeMatrix, sink: Sink) -> None:
    """Write a code matrix in GECC format."""
    _write(sink, encode_codes(codes))
    logger.info(f"Codes written: n={codes.n}, c={codes.c}, m={codes.m}")


def read_codes(source: Sink) -> CodeMatrix:
    """Read a GECC code file."""
    codes = decode_codes(_read(source))
    logger.info(f"Codes read: n={codes.n}, c={codes.c}, m={codes.m}")
    return codes


def write_dense(matrix: np.ndarray, sink: Sink) -> None:
    """Write a 2-D matrix as GEF32 (values cast to float32)."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {matrix.shape}")
    header = DENSE_HEADER.pack(DENSE_MAGIC, matrix.shape[0], matrix.shape[1])
    _write(sink, header + np.ascontiguousarray(matrix, dtype="<f4").tobytes())


def read_dense_header(fh: BinaryIO) -> Tuple[int, int]:
    """
    Read a GEF32 header from the current position.

    Returns:
        (rows, cols); the handle is left at the first data byte
    """
    start = fh.tell()
    raw = fh.read(DENSE_HEADER.size)
    if len(raw) < DENSE_HEADER.size:
        raise CodeFormatError("truncated dense header", offset=start + len(raw))
    magic, rows, cols = DENSE_HEADER.unpack(raw)
    if magic != DENSE_MAGIC:
        raise CodeFormatError(f"bad magic {magic!r}", offset=start)
    return rows, cols


def read_dense_block(fh: BinaryIO, rows: int, cols: int) -> np.ndarray:
    """Read ``rows`` float32 rows of width ``cols`` from the current position."""
    start = fh.tell()
    count = rows * cols
    raw = fh.read(count * 4)
    if len(raw) < count * 4:
        raise CodeFormatError(
            f"truncated dense data: {len(raw)} of {count * 4} bytes", offset=start + len(raw)
        )
    return np.frombuffer(raw, dtype="<f4").reshape(rows, cols)


def read_dense(source: Sink) -> np.ndarray:
    """Read a whole GEF32 file as a float32 matrix."""
    if isinstance(source, (str, Path)):
        with Path(source).open("rb") as fh:
            return read_dense(fh)
    rows, cols = read_dense_header(source)
    return read_dense_block(source, rows, cols).copy()
