"""Edge-list text loader."""

import re
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Tuple, Union

import numpy as np

from hashembed.core.exceptions import ParseError, RangeError
from hashembed.core.logger import logger
from hashembed.sparse.csr import CsrMatrix

EdgeSource = Union[str, Path, TextIO, Iterable[str]]

NODE_COUNT = re.compile(r"\bnodes=(\d+)\b")


def text_lines(source: EdgeSource) -> Iterable[str]:
    # a str is the text itself; file paths must be passed as Path
    if isinstance(source, Path):
        with source.open("r", encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, str):
        yield from source.splitlines()
    else:
        yield from source


def read_edge_file(source: EdgeSource) -> Tuple[np.ndarray, Optional[int]]:
    """
    Parse an edge list and the node count its comments declare.

    Blank lines are skipped. Lines starting with '#' are comments; the
    first one carrying a ``nodes=N`` token declares the node count, so
    trailing isolated nodes survive a write and reload.

    Returns:
        (E, 2) int64 edges and the declared count, or None

    Raises:
        ParseError: On a malformed line, with its 1-based line number
    """
    edges: List[tuple] = []
    declared: Optional[int] = None
    for lineno, raw in enumerate(text_lines(source), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            found = NODE_COUNT.search(line)
            if found and declared is None:
                declared = int(found.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two node ids, got {len(parts)} fields", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer node id in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in {line!r}", line=lineno)
        edges.append((u, v))
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2), declared


def parse_edges(source: EdgeSource) -> np.ndarray:
    """
    Parse an edge list into an (E, 2) int64 array, ignoring comments.

    Raises:
        ParseError: On a malformed line, with its 1-based line number
    """
    return read_edge_file(source)[0]


def edges_to_csr(edges: np.ndarray, n_nodes: int, symmetrize: bool) -> CsrMatrix:
    """Adjacency matrix with value 1.0 per distinct edge."""
    if symmetrize:
        edges = np.concatenate([edges, edges[:, ::-1]])
    # sorted unique linear positions are already in CSR order
    linear = np.unique(edges[:, 0] * n_nodes + edges[:, 1])
    rows, cols = np.divmod(linear, n_nodes) if n_nodes else (linear, linear)
    counts = np.bincount(rows, minlength=n_nodes)
    row_ptr = np.concatenate([[0], np.cumsum(counts)])
    return CsrMatrix(
        n_rows=n_nodes,
        n_cols=n_nodes,
        row_ptr=row_ptr,
        col_idx=cols,
        values=np.ones(len(cols), dtype=np.float64),
    )


def load_edge_list(
    source: EdgeSource,
    symmetrize: bool = True,
    n_nodes: Optional[int] = None,
) -> CsrMatrix:
    """
    Load an edge list as an adjacency CSR matrix.

    Duplicate edges collapse to one entry and self-loops are kept.

    Args:
        source: Edge-list text, a Path to a file, or an iterable of lines
        symmetrize: Add (v, u) for every (u, v)
        n_nodes: Declared node count; when omitted, a ``nodes=N`` comment
            in the file, else max id + 1

    Returns:
        Square adjacency matrix

    Raises:
        ParseError: On a malformed line
        RangeError: If an id is not below the declared node count
    """
    edges, declared = read_edge_file(source)
    inferred = int(edges.max()) + 1 if len(edges) else 0
    if n_nodes is None:
        n_nodes = declared
    if n_nodes is None:
        n_nodes = inferred
    elif inferred > n_nodes:
        raise RangeError(f"node id {inferred - 1} exceeds declared node count {n_nodes}")

    matrix = edges_to_csr(edges, n_nodes, symmetrize)
    logger.info(f"Edge list loaded: {n_nodes} nodes, {len(edges)} edges, {matrix.nnz} nonzeros")
    return matrix


def write_edge_list(edges: np.ndarray, path: Path, header: Optional[str] = None) -> None:
    """Write one "u v" pair per line, optionally under a '#' comment."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for u, v in np.asarray(edges, dtype=np.int64).reshape(-1, 2):
            fh.write(f"{u}\t{v}\n")
    logger.info(f"Edge list written: {len(edges)} edges to {path}")
