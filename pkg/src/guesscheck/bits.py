"""Bit strings as 1-D ``uint8`` numpy arrays.

Every module passes bit sequences around as plain numpy arrays holding only
0 and 1. The helpers here coerce and validate them, chunk them into blocks,
apply deletions and test the subsequence relation.

Deletion positions are 1-based (the 14th bit is position 14), everything else
(block and symbol indices) is 0-based.
"""
from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

BitLike = Union[str, Sequence[int], np.ndarray]


def as_bits(value: BitLike) -> np.ndarray:
    """Coerce ``value`` to a uint8 bit array, rejecting anything but 0/1.

    Strings may contain whitespace, which is ignored, so ``"1110 0000"`` works.
    """
    if isinstance(value, str):
        text = "".join(value.split())
        if text.strip("01"):
            raise ValueError(f"bit string may only contain '0' and '1': {value!r}")
        return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(value)
    if arr.ndim != 1:
        raise ValueError("bit string must be one-dimensional")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError("bit string may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def to_str(bits: np.ndarray) -> str:
    return (np.asarray(bits, dtype=np.uint8) + ord("0")).tobytes().decode("ascii")


def random_bits(n: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. Bernoulli(1/2) bits."""
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def chunk(bits: BitLike, ell: int) -> list[np.ndarray]:
    """Split into adjacent blocks of exactly ``ell`` bits."""
    s = as_bits(bits)
    if ell <= 0:
        raise ValueError("block length must be positive")
    if s.size % ell:
        raise ValueError(f"block length {ell} does not divide bit length {s.size}")
    return [s[i:i + ell] for i in range(0, s.size, ell)]


def delete_at(bits: BitLike, positions: Iterable[int]) -> np.ndarray:
    """Remove the bits at the given 1-based positions."""
    s = as_bits(bits)
    pos = list(positions)
    if len(set(pos)) != len(pos):
        raise ValueError("duplicate deletion position")
    for p in pos:
        if not 1 <= p <= s.size:
            raise ValueError(f"deletion position {p} outside [1, {s.size}]")
    if not pos:
        return s.copy()
    return np.delete(s, np.asarray(pos, dtype=np.int64) - 1)


def is_subsequence(s: BitLike, t: BitLike) -> bool:
    """True iff ``s`` can be obtained from ``t`` by deleting bits.

    Greedy two-pointer scan: match each bit of ``s`` to its earliest possible
    occurrence in ``t``.
    """
    s = as_bits(s)
    t = as_bits(t)
    if s.size > t.size:
        return False
    i = 0
    for bit in t.tolist():
        if i == s.size:
            break
        if bit == s[i]:
            i += 1
    return i == s.size


def bits_to_int(bits: np.ndarray) -> int:
    """MSB-first integer value of a bit array."""
    v = 0
    for b in np.asarray(bits).tolist():
        v = (v << 1) | int(b)
    return v


def int_to_bits(value: int, width: int) -> np.ndarray:
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def pack(bits: BitLike) -> bytes:
    """MSB-first packing; the final byte is zero padded."""
    return np.packbits(as_bits(bits)).tobytes()


def unpack(data: bytes, nbits: int) -> np.ndarray:
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if arr.size < nbits:
        raise ValueError(f"need {nbits} bits, only {arr.size} available")
    return arr[:nbits].astype(np.uint8)
