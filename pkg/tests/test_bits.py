import numpy as np
import pytest
from hypothesis import given, strategies as st

from guesscheck.bits import (as_bits, bits_to_int, chunk, delete_at, int_to_bits,
                             is_subsequence, pack, random_bits, to_str, unpack)
from oracles import is_subseq, lcs_len

bitlists = st.lists(st.integers(0, 1), max_size=40)


def test_as_bits_accepts_strings_with_spaces():
    assert to_str(as_bits("1110 0000\n1101")) == "111000001101"


@pytest.mark.parametrize("bad", ["0120", "abc", [0, 2], np.array([[0, 1]])])
def test_as_bits_rejects_non_bits(bad):
    with pytest.raises(ValueError):
        as_bits(bad)


def test_chunk_and_divisibility():
    blocks = chunk("1110000011010001", 4)
    assert [to_str(b) for b in blocks] == ["1110", "0000", "1101", "0001"]
    with pytest.raises(ValueError):
        chunk("11100", 4)


def test_delete_at_is_one_based():
    # the 14th bit of the codeword in the worked example
    x = "111000001101000100100111"
    assert to_str(delete_at(x, [14])) == "11100000110100100100111"
    with pytest.raises(ValueError):
        delete_at(x, [0])
    with pytest.raises(ValueError):
        delete_at(x, [3, 3])
    with pytest.raises(ValueError):
        delete_at(x, [25])


def test_int_bits_roundtrip():
    assert to_str(int_to_bits(13, 4)) == "1101"
    assert bits_to_int(as_bits("1101")) == 13
    with pytest.raises(ValueError):
        int_to_bits(16, 4)


@given(bitlists)
def test_pack_roundtrip(bits):
    arr = np.array(bits, dtype=np.uint8)
    assert np.array_equal(unpack(pack(arr), arr.size), arr)


@given(bitlists, bitlists)
def test_subsequence_matches_dp_oracle(s, t):
    expected = lcs_len(s, t) == len(s)
    assert is_subsequence(np.array(s, dtype=np.uint8), np.array(t, dtype=np.uint8)) == expected
    assert is_subseq(s, t) == expected


def test_random_bits_reproducible():
    a = random_bits(100, np.random.default_rng(3))
    b = random_bits(100, np.random.default_rng(3))
    assert np.array_equal(a, b) and set(np.unique(a)) <= {0, 1}
