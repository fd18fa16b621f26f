"""Tests for bit packing."""

import numpy as np
import pytest

from hashembed.core.exceptions import DomainError, RangeError, ShapeError
from hashembed.codes.packing import (
    code_bits,
    pack_code,
    pack_codes,
    row_bytes,
    unpack_code,
    unpack_codes,
)


def bit_string(row: np.ndarray, n_bit: int) -> str:
    return "".join(str(b) for b in np.unpackbits(row)[:n_bit])


class TestPackCode:
    """Test pack_code and unpack_code."""

    def test_concatenation_example(self):
        """Test [2,0,3,1,0,1] with c=4 packs to 10 00 11 01 00 01 plus zero pad."""
        row = pack_code([2, 0, 3, 1, 0, 1], c=4)
        assert bit_string(row, 12) == "100011010001"
        assert row.tolist() == [0x8D, 0x10]

    def test_binary_to_integer_example(self):
        """Test that 10 10 00 11 01 unpacks to [2, 2, 0, 3, 1]."""
        row = np.packbits(np.array([1, 0, 1, 0, 0, 0, 1, 1, 0, 1], dtype=np.uint8))
        assert unpack_code(row, c=4, m=5).tolist() == [2, 2, 0, 3, 1]

    def test_all_zero(self):
        """Test that an all-zero code is one zero byte."""
        assert pack_code([0, 0, 0, 0], c=4).tolist() == [0]
        assert unpack_code(np.zeros(1, dtype=np.uint8), c=4, m=4).tolist() == [0, 0, 0, 0]

    def test_element_out_of_range(self):
        """Test that elements must be below c."""
        with pytest.raises(RangeError):
            pack_code([0, 4], c=4)

    def test_short_row(self):
        """Test that a row with too few bits is rejected."""
        with pytest.raises(ShapeError):
            unpack_code(np.zeros(1, dtype=np.uint8), c=16, m=3)

    @pytest.mark.parametrize("c, m", [(2, 1), (4, 5), (16, 7), (256, 16), (1024, 3)])
    def test_random_round_trip(self, c, m):
        """Test unpack(pack(x)) = x and zero pad bits."""
        codes = np.random.default_rng(c * m).integers(0, c, size=(1000, m))
        packed = pack_codes(codes, c)
        assert packed.shape == (1000, row_bytes(c, m))
        np.testing.assert_array_equal(unpack_codes(packed, c, m), codes)
        assert not np.unpackbits(packed, axis=1)[:, code_bits(c, m) :].any()


class TestCodeBits:
    """Test code_bits."""

    @pytest.mark.parametrize("c, m, expected", [(64, 8, 48), (2, 1, 1), (256, 16, 128)])
    def test_examples(self, c, m, expected):
        """Test reference bit counts."""
        assert code_bits(c, m) == expected

    def test_exhaustive(self):
        """Test m * log2(c) over all powers of two up to 1024."""
        for b in range(1, 11):
            for m in range(1, 257):
                assert code_bits(2**b, m) == m * b

    @pytest.mark.parametrize("c", [0, 1, 3, 12])
    def test_not_power_of_two(self, c):
        """Test that c must be a power of 2."""
        with pytest.raises(DomainError):
            code_bits(c, 4)
