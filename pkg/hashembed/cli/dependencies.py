"""Input wiring shared by the commands."""

from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from pydantic import Field, model_validator

from hashembed.cli.run_config import RunConfig
from hashembed.codes.code_matrix import CodeMatrix
from hashembed.codes.storage import read_codes, read_dense
from hashembed.core.exceptions import RangeError
from hashembed.gnn.graph import GraphStore
from hashembed.gnn.io import read_labels
from hashembed.sparse.edge_list import edges_to_csr, load_edge_list, read_edge_file
from hashembed.sparse.interface import RowSource
from hashembed.sparse.sources import DenseFileRowSource, InMemoryRowSource


class AuxInputConfig(RunConfig):
    """Where the auxiliary matrix comes from: an edge list or a GEF32 file."""

    edges: Optional[Path] = None
    dense: Optional[Path] = None
    symmetrize: bool = True
    n_nodes: Optional[int] = Field(default=None, ge=1)
    streaming: bool = True
    block_rows: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _one_input(self) -> "AuxInputConfig":
        if (self.edges is None) == (self.dense is None):
            raise ValueError("give exactly one of edges or dense")
        return self


def get_row_source(cfg: AuxInputConfig) -> RowSource:
    """
    Row source for the configured input.

    Edge lists are loaded into memory. GEF32 files are streamed unless
    ``streaming`` is off, in which case they are loaded whole.
    """
    if cfg.edges is not None:
        adjacency = load_edge_list(Path(cfg.edges), cfg.symmetrize, cfg.n_nodes)
        return InMemoryRowSource(adjacency, cfg.block_rows)
    if cfg.streaming:
        return DenseFileRowSource(cfg.dense, cfg.block_rows)
    return InMemoryRowSource.from_dense(read_dense(cfg.dense), cfg.block_rows)


def get_node_inputs(
    edges_path: Path,
    labels_path: Path,
    codes_path: Optional[Path],
    n_nodes: Optional[int] = None,
) -> Tuple[GraphStore, np.ndarray, Optional[CodeMatrix]]:
    """
    Graph, labels and codes for node classification, on one node count.

    The count is the declared ``n_nodes``, else the code row count, else
    the ``nodes=N`` comment of the edge file, else the largest id seen in
    the edges or labels plus one.

    Raises:
        RangeError: If an edge or label names a node beyond that count
    """
    codes = read_codes(codes_path) if codes_path is not None else None
    edges, declared = read_edge_file(Path(edges_path))
    labels = read_labels(Path(labels_path))
    seen = max(int(edges.max()) + 1 if len(edges) else 0, len(labels))
    n = n_nodes or (codes.n if codes is not None else declared or seen)
    if seen > n:
        raise RangeError(f"node id {seen - 1} exceeds the node count {n}")

    padded = np.full(n, -1, dtype=np.int64)
    padded[: len(labels)] = labels
    graph = GraphStore.from_adjacency(edges_to_csr(edges, n, symmetrize=True))
    return graph, padded, codes
