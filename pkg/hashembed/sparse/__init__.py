"""Sparse auxiliary-matrix storage and row streaming."""

from hashembed.sparse.csr import CsrMatrix, SparseRow, row_dot
from hashembed.sparse.edge_list import load_edge_list, parse_edges, read_edge_file, write_edge_list
from hashembed.sparse.interface import RowSource
from hashembed.sparse.sources import DenseFileRowSource, InMemoryRowSource

__all__ = [
    "CsrMatrix",
    "SparseRow",
    "row_dot",
    "load_edge_list",
    "parse_edges",
    "read_edge_file",
    "write_edge_list",
    "RowSource",
    "InMemoryRowSource",
    "DenseFileRowSource",
]
