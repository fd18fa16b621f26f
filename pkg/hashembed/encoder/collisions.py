"""Code collision counting and the median-versus-zero threshold experiment."""

import csv
from pathlib import Path
from typing import List, NamedTuple, TextIO, Union

import numpy as np

from hashembed.core.exceptions import DomainError
from hashembed.core.logger import logger
from hashembed.core.models import ThresholdMode
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.core.seeding import derive_seed
from hashembed.encoder.hashing import projections, select_threshold
from hashembed.sparse.interface import RowSource

CSV_HEADER = ["trial", "median_collisions", "zero_collisions"]


class CollisionTrial(NamedTuple):
    """Collision counts of one paired trial."""

    trial: int
    median_collisions: int
    zero_collisions: int


def count_collisions(codes: CodeMatrix) -> int:
    """Entities minus distinct code rows."""
    return codes.n - codes.distinct_rows()


def collision_experiment(
    a: RowSource, n_bit: int, trials: int, seed: int
) -> List[CollisionTrial]:
    """
    Compare collisions under median and zero thresholds.

    Each trial derives one sub-seed; both thresholds binarize the very
    same projections.

    Raises:
        DomainError: If ``trials`` or ``n_bit`` is below 1
    """
    if trials < 1:
        raise DomainError("at least one trial is required")
    if n_bit < 1:
        raise DomainError("at least one bit is required")

    table = []
    for k in range(trials):
        sub_seed = derive_seed(seed, k)
        median_bits = np.zeros((a.n_rows, n_bit), dtype=bool)
        zero_bits = np.zeros((a.n_rows, n_bit), dtype=bool)
        for i, u in projections(a, sub_seed, n_bit):
            median_bits[:, i] = u > select_threshold(u, ThresholdMode.MEDIAN)
            zero_bits[:, i] = u > select_threshold(u, ThresholdMode.ZERO)

        row = CollisionTrial(
            trial=k,
            median_collisions=count_collisions(
                CodeMatrix.from_bool(median_bits, 2, n_bit, sub_seed, ThresholdMode.MEDIAN)
            ),
            zero_collisions=count_collisions(
                CodeMatrix.from_bool(zero_bits, 2, n_bit, sub_seed, ThresholdMode.ZERO)
            ),
        )
        logger.debug(f"Trial {k}: median={row.median_collisions}, zero={row.zero_collisions}")
        table.append(row)
    return table


def write_collision_csv(table: List[CollisionTrial], sink: Union[str, Path, TextIO]) -> None:
    """Write the experiment table as CSV."""
    if isinstance(sink, (str, Path)):
        with Path(sink).open("w", newline="", encoding="utf-8") as fh:
            write_collision_csv(table, fh)
        return
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in table:
        writer.writerow([row.trial, row.median_collisions, row.zero_collisions])
