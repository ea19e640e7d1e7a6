from itertools import product

import numpy as np
import pytest

from guesscheck.vt import VtDecodeError, vt_repair, vt_syndrome
from oracles import vt_insertions


@pytest.mark.parametrize("L", range(1, 13))
def test_repair_inverts_every_single_deletion(L):
    for x in product((0, 1), repeat=L):
        s = vt_syndrome(np.array(x, dtype=np.uint8))
        for i in range(L):
            y = np.array(x[:i] + x[i + 1:], dtype=np.uint8)
            assert tuple(vt_repair(y, s, L).tolist()) == x


@pytest.mark.parametrize("L", range(1, 11))
def test_bruteforce_insertion_oracle_agrees(L):
    for y in product((0, 1), repeat=L - 1):
        for s in range(L + 1):
            found = vt_insertions(y, s, L)
            # the VT class is single-deletion correcting: at most one preimage
            assert len(found) <= 1
            if found:
                assert tuple(vt_repair(np.array(y, dtype=np.uint8), s, L).tolist()) in found


def test_syndrome_definition():
    assert vt_syndrome("1011") == (1 + 3 + 4) % 5
    assert vt_syndrome("") == 0


def test_errors():
    with pytest.raises(VtDecodeError):
        vt_repair("101", 0, 5)
    with pytest.raises(VtDecodeError):
        vt_repair("1010", 6, 5)
