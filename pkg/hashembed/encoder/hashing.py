"""Random-projection hashing into compositional codes.

Codes are produced bit by bit: each bit draws one Gaussian direction of
length d, projects every row of the auxiliary matrix onto it, and sets
the bit for rows strictly above the threshold. Only one direction and
one projection vector are alive at a time.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional, Tuple

import numpy as np

from hashembed.core.config import settings
from hashembed.core.exceptions import ConfigError, DomainError, ShapeError
from hashembed.core.logger import logger
from hashembed.core.models import EncoderConfig, ThresholdMode
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.codes.packing import row_bytes
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.sparse.interface import RowSource


def random_vector(d: int, bit_seed: int) -> np.ndarray:
    """
    Draw ``d`` standard-normal samples from a generator seeded by ``bit_seed``.

    Raises:
        DomainError: If ``d`` is below 1
    """
    if d < 1:
        raise DomainError(f"projection dimension must be at least 1, got {d}")
    return make_rng(bit_seed).standard_normal(d)


def select_threshold(u: np.ndarray, mode: ThresholdMode) -> float:
    """
    Binarization threshold for one projected column.

    The median is the lower-middle order statistic, found by introselect;
    ``u`` is not modified.

    Raises:
        DomainError: If ``u`` is empty or the mode has no threshold
    """
    u = np.asarray(u, dtype=np.float64)
    if len(u) == 0:
        raise DomainError("cannot select a threshold over an empty vector")
    mode = ThresholdMode(mode)
    if mode is ThresholdMode.ZERO:
        return 0.0
    if mode is ThresholdMode.MEDIAN:
        k = (len(u) - 1) // 2
        return float(np.partition(u, k)[k])
    raise DomainError(f"threshold mode {mode.value!r} does not binarize projections")


def project(a: RowSource, v: np.ndarray) -> np.ndarray:
    """
    One streaming pass computing u = A v.

    Raises:
        ShapeError: If a row width differs from ``len(v)``
    """
    u = np.empty(a.n_rows, dtype=np.float64)
    for start, block in a.iter_blocks():
        if block.n_cols != len(v):
            raise ShapeError(f"row width {block.n_cols} does not match projection length {len(v)}")
        u[start : start + block.n_rows] = block.dot(v)
    return u


def projections(a: RowSource, seed: int, n_bit: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (bit_index, projected column) for every bit, in order."""
    for i in range(n_bit):
        yield i, project(a, random_vector(a.n_cols, derive_seed(seed, i)))


def _encode_bit(a: RowSource, seed: int, i: int, mode: ThresholdMode) -> np.ndarray:
    u = project(a, random_vector(a.n_cols, derive_seed(seed, i)))
    return u > select_threshold(u, mode)


def _set_bit(packed: np.ndarray, i: int, column: np.ndarray) -> None:
    packed[:, i // 8] |= column.astype(np.uint8) << (7 - i % 8)


def encode(a: RowSource, cfg: EncoderConfig, workers: Optional[int] = None) -> CodeMatrix:
    """
    Hash the rows of an auxiliary matrix into compositional codes.

    Bit ``i`` uses the direction seeded by ``derive_seed(cfg.seed, i)``,
    so the result does not depend on ``workers``.

    Args:
        a: Row source of the auxiliary matrix
        cfg: Encoder configuration (median or zero threshold)
        workers: Threads computing bits concurrently (defaults to settings)

    Returns:
        Packed codes of shape n x m*log2(c)

    Raises:
        ConfigError: If ``cfg`` asks for the random baseline
        ShapeError: If row widths are inconsistent
    """
    if cfg.threshold_mode is ThresholdMode.RANDOM:
        raise ConfigError("the random baseline is produced by random_codes, not encode")
    workers = workers or settings.encode_workers
    n_bit = cfg.n_bit
    packed = np.zeros((a.n_rows, row_bytes(cfg.c, cfg.m)), dtype=np.uint8)

    started = time.perf_counter()
    logger.info(
        f"Encoding {a.n_rows} rows of width {a.n_cols} into {n_bit} bits "
        f"(threshold={cfg.threshold_mode.value}, workers={workers})"
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = pool.map(
                lambda i: _encode_bit(a, cfg.seed, i, cfg.threshold_mode), range(n_bit)
            )
            for i, column in enumerate(columns):
                _set_bit(packed, i, column)
    else:
        for i in range(n_bit):
            _set_bit(packed, i, _encode_bit(a, cfg.seed, i, cfg.threshold_mode))

    logger.info(f"Encoding finished in {time.perf_counter() - started:.3f}s")
    return CodeMatrix(a.n_rows, cfg.c, cfg.m, packed, cfg.seed, cfg.threshold_mode)


def random_codes(n: int, cfg: EncoderConfig) -> CodeMatrix:
    """
    Random-coding baseline: every code element uniform in [0, c).

    Collisions are not removed.
    """
    codes = make_rng(cfg.seed).integers(0, cfg.c, size=(n, cfg.m))
    return CodeMatrix.from_codes(codes, cfg.c, cfg.seed, ThresholdMode.RANDOM)
