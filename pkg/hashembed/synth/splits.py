"""Random train/valid/test splits."""

import numpy as np

from hashembed.core.exceptions import ConfigError
from hashembed.core.seeding import make_rng
from hashembed.gnn.io import Splits


def gen_splits(n: int, train: float = 0.7, valid: float = 0.1, seed: int = 0) -> Splits:
    """
    Shuffle ``0..n-1`` and cut it into train, valid and test parts.

    Part sizes are floor(train*n) and floor(valid*n); the test split
    takes the rest.

    Raises:
        ConfigError: If the fractions are not positive or leave no test nodes
    """
    if train <= 0 or valid <= 0 or train + valid >= 1:
        raise ConfigError(f"split fractions train={train}, valid={valid} must be positive and sum below 1")
    n_train, n_valid = int(train * n), int(valid * n)
    if n_train == 0 or n_valid == 0 or n_train + n_valid == n:
        raise ConfigError(f"{n} nodes are too few for a {train}/{valid} split")
    order = make_rng(seed).permutation(n).astype(np.int64)
    return {
        "train": np.sort(order[:n_train]),
        "valid": np.sort(order[n_train : n_train + n_valid]),
        "test": np.sort(order[n_train + n_valid :]),
    }
