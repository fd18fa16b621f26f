"""Tests for the edge-list loader."""

import numpy as np
import pytest

from hashembed.core.exceptions import ParseError, RangeError
from hashembed.sparse.edge_list import load_edge_list, parse_edges, read_edge_file, write_edge_list


class TestLoadEdgeList:
    """Test load_edge_list."""

    def test_symmetrized_triangle(self):
        """Test that an undirected triangle gives 3 rows of 2 neighbors."""
        adjacency = load_edge_list("0 1\n1 2\n2 0\n")
        assert adjacency.shape == (3, 3)
        assert adjacency.nnz == 6
        np.testing.assert_array_equal(adjacency.row(0).col_idx, [1, 2])
        np.testing.assert_array_equal(adjacency.row(1).col_idx, [0, 2])
        assert adjacency.coordinates() == adjacency.transpose().coordinates()

    def test_comments_blank_lines_and_duplicates(self):
        """Test that comments are skipped and duplicates collapse."""
        adjacency = load_edge_list("# header\n\n0 1\n0\t1\n1 0\n")
        assert adjacency.nnz == 2
        np.testing.assert_array_equal(adjacency.values, [1.0, 1.0])

    def test_directed_keeps_orientation(self):
        """Test symmetrize=False."""
        adjacency = load_edge_list("0 2\n", symmetrize=False)
        assert adjacency.coordinates() == {(0, 2)}

    def test_self_loop_is_kept(self):
        """Test that a self-loop becomes one diagonal entry."""
        adjacency = load_edge_list("1 1\n")
        assert adjacency.coordinates() == {(1, 1)}

    def test_declared_count_adds_isolated_nodes(self):
        """Test that an explicit node count wins over the inferred one."""
        adjacency = load_edge_list("0 1\n", n_nodes=5)
        assert adjacency.shape == (5, 5)
        assert adjacency.row(4).col_idx.size == 0

    def test_header_count_keeps_trailing_isolated_nodes(self):
        """Test a nodes=N comment when the last nodes have no edges."""
        adjacency = load_edge_list("# sbm nodes=6\n0 1\n2 3\n")
        assert adjacency.shape == (6, 6)
        assert adjacency.row(5).col_idx.size == 0

    def test_explicit_count_beats_header(self):
        """Test that n_nodes overrides the comment."""
        assert load_edge_list("# nodes=6\n0 1\n", n_nodes=8).shape == (8, 8)

    def test_header_count_below_ids(self):
        """Test ids beyond the count declared in a comment."""
        with pytest.raises(RangeError):
            load_edge_list("# nodes=3\n0 5\n")

    def test_read_edge_file_returns_first_count(self):
        """Test that the first nodes=N comment is the declaration."""
        edges, declared = read_edge_file("# nodes=4\n# nodes=9\n0 1\n")
        assert declared == 4
        np.testing.assert_array_equal(edges, [[0, 1]])
        assert read_edge_file("0 1\n")[1] is None

    def test_id_beyond_declared_count(self):
        """Test that ids must fit the declared count."""
        with pytest.raises(RangeError):
            load_edge_list("0 7\n", n_nodes=5)

    @pytest.mark.parametrize("text, line", [("0 1\n0 x\n", 2), ("0 1 2\n", 1), ("-1 0\n", 1), ("# c\n5\n", 2)])
    def test_malformed_lines(self, text, line):
        """Test that parse errors carry the offending line number."""
        with pytest.raises(ParseError) as info:
            parse_edges(text)
        assert info.value.line == line

    def test_empty_input(self):
        """Test an edge list with no edges."""
        assert load_edge_list("# nothing\n").shape == (0, 0)

    def test_write_then_load(self, tmp_path):
        """Test that written edge lists load back."""
        path = tmp_path / "edges.tsv"
        write_edge_list(np.array([[0, 1], [1, 3]]), path, header="tiny")
        assert path.read_text().startswith("# tiny\n")
        adjacency = load_edge_list(path, n_nodes=4)
        assert adjacency.coordinates() == {(0, 1), (1, 0), (1, 3), (3, 1)}
