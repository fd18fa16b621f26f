"""encode and collisions commands."""

import time
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import Field, field_validator

from hashembed.cli.commands import add_aux_input_arguments, add_command
from hashembed.cli.dependencies import AuxInputConfig, get_row_source
from hashembed.cli.run_config import IntList
from hashembed.codes.storage import write_codes
from hashembed.core.logger import logger
from hashembed.core.models import EncoderConfig, ThresholdMode, is_power_of_two
from hashembed.encoder.collisions import CollisionTrial, collision_experiment, write_collision_csv
from hashembed.encoder.hashing import encode, random_codes


class EncodeRun(AuxInputConfig):
    """Settings of ``encode``."""

    c: int = Field(default=256, ge=2)
    m: int = Field(default=16, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    threshold: ThresholdMode = ThresholdMode.MEDIAN
    workers: Optional[int] = Field(default=None, ge=1)
    out: Path

    @field_validator("c")
    @classmethod
    def _c_power_of_two(cls, value: int) -> int:
        if not is_power_of_two(value):
            raise ValueError("c must be a power of 2")
        return value

    def encoder_config(self) -> EncoderConfig:
        return EncoderConfig(c=self.c, m=self.m, seed=self.seed, threshold_mode=self.threshold)


class CollisionsRun(AuxInputConfig):
    """Settings of ``collisions``."""

    n_bits: IntList = (24, 32)
    trials: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    out: Path

    @field_validator("n_bits")
    @classmethod
    def _positive_lengths(cls, value):
        if not value or min(value) < 1:
            raise ValueError("bit lengths must be positive")
        return value


def run_encode(cfg: EncodeRun) -> None:
    source = get_row_source(cfg)
    started = time.perf_counter()
    if cfg.threshold is ThresholdMode.RANDOM:
        codes = random_codes(source.n_rows, cfg.encoder_config())
    else:
        codes = encode(source, cfg.encoder_config(), cfg.workers)
    elapsed = time.perf_counter() - started
    write_codes(codes, cfg.out)
    logger.info(f"Codes written to {cfg.out}")

    print(f"n: {codes.n}")
    print(f"n_bit: {codes.n_bit}")
    print(f"code_bytes: {codes.bits.nbytes}")
    print(f"elapsed_s: {elapsed:.3f}")


def collision_csv_path(out: Path, n_bit: int, several: bool) -> Path:
    """``out`` itself for one bit length, else ``<stem>_<n_bit>bits<suffix>``."""
    if not several:
        return out
    return out.with_name(f"{out.stem}_{n_bit}bits{out.suffix}")


def summarize(table: List[CollisionTrial]) -> str:
    median = np.array([row.median_collisions for row in table])
    zero = np.array([row.zero_collisions for row in table])
    return (
        f"mean_median={median.mean():.2f} mean_zero={zero.mean():.2f} "
        f"median_wins={int(np.sum(median < zero))}/{len(table)}"
    )


def run_collisions(cfg: CollisionsRun) -> None:
    source = get_row_source(cfg)
    several = len(cfg.n_bits) > 1
    for n_bit in cfg.n_bits:
        table = collision_experiment(source, n_bit, cfg.trials, cfg.seed)
        path = collision_csv_path(Path(cfg.out), n_bit, several)
        write_collision_csv(table, path)
        logger.info(f"Collision table written to {path}")
        print(f"n_bit={n_bit} {summarize(table)}")


def register(subparsers) -> None:
    parser = add_command(
        subparsers, "encode", "hash auxiliary rows into compositional codes", EncodeRun, run_encode
    )
    add_aux_input_arguments(parser)
    parser.add_argument("--c", type=int, help="code cardinality (power of 2)")
    parser.add_argument("--m", type=int, help="code length")
    parser.add_argument("--seed", type=int)
    parser.add_argument(
        "--threshold", choices=[mode.value for mode in ThresholdMode], help="binarization rule"
    )
    parser.add_argument("--workers", type=int, help="threads computing bits")
    parser.add_argument("--out", type=Path, help="GECC output file")

    parser = add_command(
        subparsers,
        "collisions",
        "count code collisions under median and zero thresholds",
        CollisionsRun,
        run_collisions,
    )
    add_aux_input_arguments(parser)
    parser.add_argument(
        "--n-bit", dest="n_bits", type=int, action="append", help="code length in bits (repeatable)"
    )
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", type=Path, help="CSV output file")
