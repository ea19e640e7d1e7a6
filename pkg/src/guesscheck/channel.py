"""Deletion channel with reproducible per-trial random streams.

Trial ``i`` of a run seeded with ``master_seed`` draws from its own generator,
seeded with ``stream_seed(master_seed, i)``::

    z = (master_seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    stream_seed = z ^ (z >> 31)

(the SplitMix64 finalizer), feeding ``numpy.random.PCG64``. Results therefore
do not depend on how trials are spread over worker processes.
"""
from __future__ import annotations

import numpy as np

from .bits import as_bits, delete_at

MASK64 = (1 << 64) - 1


def stream_seed(master_seed: int, index: int) -> int:
    z = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(stream_seed(master_seed, index)))


def sample_deletion_positions(L: int, count: int, rng: np.random.Generator) -> list[int]:
    """``count`` distinct 1-based positions, uniform over all subsets of [1, L]."""
    if not 0 <= count <= L:
        raise ValueError(f"cannot delete {count} of {L} bits")
    if count == 0:
        return []
    picked = rng.choice(L, size=count, replace=False)
    return sorted(int(p) + 1 for p in picked)


def deletion_channel(x, count: int, rng: np.random.Generator) -> tuple[np.ndarray, list[int]]:
    x = as_bits(x)
    pos = sample_deletion_positions(x.size, count, rng)
    return delete_at(x, pos), pos
