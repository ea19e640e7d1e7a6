"""Varshamov-Tenengolts single-deletion codec.

A length-L string x has syndrome ``sum(i * x_i for i = 1..L) mod (L+1)``.
Knowing the syndrome of x, any single deletion from x can be undone with
Levenshtein's reinsertion rule.
"""
from __future__ import annotations

import numpy as np

from .bits import as_bits


class VtDecodeError(ValueError):
    pass


def vt_syndrome(x) -> int:
    x = as_bits(x)
    L = x.size
    return int(np.dot(np.arange(1, L + 1, dtype=np.int64), x)) % (L + 1)


def vt_repair(y, s: int, L: int) -> np.ndarray:
    """Rebuild the length-L string with syndrome ``s`` that ``y`` came from.

    With w the weight of y and d the syndrome deficiency: if d <= w a 0 goes
    back with exactly d ones to its right, otherwise a 1 goes back with
    exactly d - w - 1 zeros to its left.
    """
    y = as_bits(y)
    if y.size != L - 1:
        raise VtDecodeError(f"expected {L - 1} received bits, got {y.size}")
    if not 0 <= s <= L:
        raise VtDecodeError(f"syndrome {s} outside [0, {L}]")
    w = int(y.sum())
    d = (s - int(np.dot(np.arange(1, L, dtype=np.int64), y))) % (L + 1)
    if d <= w:
        # ones to the right of position p is w - (ones in y[:p])
        ones_left = np.concatenate(([0], np.cumsum(y, dtype=np.int64)))
        p = int(np.flatnonzero(ones_left == w - d)[0])
        return np.insert(y, p, 0).astype(np.uint8)
    z = d - w - 1
    zeros_left = np.concatenate(([0], np.cumsum(1 - y.astype(np.int64))))
    hits = np.flatnonzero(zeros_left == z)
    if hits.size == 0:
        raise VtDecodeError("no consistent reinsertion")
    return np.insert(y, int(hits[0]), 1).astype(np.uint8)
