"""Label and split text files.

Labels: one ``node_id label_id`` pair per line.
Splits: one ``node_id {train|valid|test}`` pair per line.
Blank lines and '#' comments are ignored in both.
"""

from pathlib import Path
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from hashembed.core.exceptions import ConfigError, ParseError, RangeError
from hashembed.core.logger import logger
from hashembed.sparse.edge_list import EdgeSource, text_lines

SPLIT_NAMES = ("train", "valid", "test")

Splits = Dict[str, np.ndarray]


def _pairs(source: EdgeSource) -> Iterator[Tuple[int, int, str]]:
    for lineno, raw in enumerate(text_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two fields, got {len(parts)}", line=lineno)
        try:
            node = int(parts[0])
        except ValueError:
            raise ParseError(f"non-integer node id {parts[0]!r}", line=lineno) from None
        if node < 0:
            raise ParseError(f"negative node id {node}", line=lineno)
        yield lineno, node, parts[1]


def read_labels(source: EdgeSource, n_nodes: Optional[int] = None) -> np.ndarray:
    """
    Read a labels file into a dense array, -1 marking unlabeled nodes.

    Args:
        source: Labels text or a Path
        n_nodes: Array length; max id + 1 when omitted

    Raises:
        ParseError: On a malformed line or a node labeled twice
        RangeError: If a node id is not below ``n_nodes``
    """
    assigned: Dict[int, int] = {}
    for lineno, node, value in _pairs(source):
        try:
            label = int(value)
        except ValueError:
            raise ParseError(f"non-integer label {value!r}", line=lineno) from None
        if label < 0:
            raise ParseError(f"negative label {label}", line=lineno)
        if node in assigned:
            raise ParseError(f"node {node} labeled twice", line=lineno)
        assigned[node] = label

    size = max(assigned, default=-1) + 1
    if n_nodes is not None:
        if size > n_nodes:
            raise RangeError(f"labeled node {size - 1} exceeds node count {n_nodes}")
        size = n_nodes
    labels = np.full(size, -1, dtype=np.int64)
    if assigned:
        labels[np.fromiter(assigned.keys(), dtype=np.int64)] = np.fromiter(
            assigned.values(), dtype=np.int64
        )
    return labels


def read_splits(source: EdgeSource) -> Splits:
    """
    Read a splits file.

    Returns:
        Mapping from each split name to its sorted node ids

    Raises:
        ParseError: On an unknown split name or a node listed twice
    """
    members: Dict[str, list] = {name: [] for name in SPLIT_NAMES}
    seen = set()
    for lineno, node, name in _pairs(source):
        if name not in members:
            raise ParseError(f"unknown split {name!r}", line=lineno)
        if node in seen:
            raise ParseError(f"node {node} assigned to more than one split", line=lineno)
        seen.add(node)
        members[name].append(node)
    return {name: np.sort(np.asarray(ids, dtype=np.int64)) for name, ids in members.items()}


def validate_splits(splits: Splits, labels: np.ndarray) -> None:
    """
    Check that every split is non-empty, disjoint and fully labeled.

    Raises:
        ConfigError: On any violation
    """
    for name in SPLIT_NAMES:
        ids = splits.get(name)
        if ids is None or len(ids) == 0:
            raise ConfigError(f"split {name!r} is empty")
        if ids.min() < 0 or ids.max() >= len(labels):
            raise ConfigError(f"split {name!r} names a node outside [0, {len(labels)})")
        if np.any(labels[ids] < 0):
            raise ConfigError(f"split {name!r} contains unlabeled nodes")
    combined = np.concatenate([splits[name] for name in SPLIT_NAMES])
    if len(np.unique(combined)) != len(combined):
        raise ConfigError("splits overlap")


def write_labels(labels: np.ndarray, path: Path) -> None:
    """Write every labeled node (label >= 0)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for node in np.flatnonzero(np.asarray(labels) >= 0):
            fh.write(f"{node}\t{labels[node]}\n")
    logger.info(f"Labels written to {path}")


def write_splits(splits: Splits, path: Path) -> None:
    """Write splits in train, valid, test order."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for name in SPLIT_NAMES:
            for node in splits.get(name, ()):
                fh.write(f"{node}\t{name}\n")
    logger.info(f"Splits written to {path}")
