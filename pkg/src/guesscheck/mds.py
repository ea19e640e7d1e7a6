"""Systematic (K+c, K) MDS erasure code over GF(2^m).

Two parity-coefficient constructions are provided:

``paper_compatible``
    c = 2 only: an all-ones row followed by (1, alpha, alpha^2, ...).
``cauchy``
    ``G[r][j] = 1 / (x_r + y_j)`` with ``y_j = j`` and ``x_r = K + r``. Every
    square submatrix of a Cauchy matrix is nonsingular, which is what the
    erasure solver relies on for any choice of erased positions and parity rows.

Rows of the Cauchy construction depend only on (K, r), so a code with more
parities extends one with fewer: ``MdsCode(f, K, 5).G[:3] == MdsCode(f, K, 3).G``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .gf2m import Field

MODES = ("paper_compatible", "cauchy")


class ConfigError(ValueError):
    """Parameters violate a construction precondition."""


def gf_solve(field: Field, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve the square system ``A x = b`` by Gaussian elimination."""
    n = len(A)
    M = [list(map(int, row)) + [int(rhs)] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = field.inv(M[col][col])
        M[col] = [field.mul(inv, v) for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v ^ field.mul(f, w) for v, w in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def gf_rank(field: Field, A) -> int:
    M = [list(map(int, row)) for row in A]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = field.inv(M[rank][col])
        M[rank] = [field.mul(inv, v) for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                M[r] = [v ^ field.mul(f, w) for v, w in zip(M[r], M[rank])]
        rank += 1
    return rank


class MdsCode:
    def __init__(self, field: Field, K: int, c: int, mode: str = "cauchy",
                 xs: Sequence[int] | None = None, ys: Sequence[int] | None = None):
        if mode not in MODES:
            raise ConfigError(f"unknown MDS mode {mode!r}; expected one of {MODES}")
        if K < 1 or c < 0:
            raise ConfigError(f"need K >= 1 and c >= 0, got K={K}, c={c}")
        if K + c > field.q:
            raise ConfigError(f"K + c = {K + c} exceeds field size q = {field.q}")
        self.field = field
        self.K = K
        self.c = c
        self.mode = mode
        if mode == "paper_compatible":
            if c != 2:
                raise ConfigError(f"paper_compatible mode needs c = 2, got c = {c}")
            rows = [[1] * K, [field.alpha_pow(j) for j in range(K)]]
        else:
            ys = list(range(K)) if ys is None else [int(v) for v in ys]
            xs = list(range(K, K + c)) if xs is None else [int(v) for v in xs]
            if len(ys) != K or len(xs) != c:
                raise ConfigError("need K y-points and c x-points")
            pts = xs + ys
            if any(not 0 <= p < field.q for p in pts):
                raise ConfigError("Cauchy points must be field elements")
            if len(set(pts)) != len(pts):
                raise ConfigError("Cauchy x- and y-points must be pairwise distinct")
            rows = [[field.inv(x ^ y) for y in ys] for x in xs]
        self.G = np.array(rows, dtype=np.int64).reshape(c, K)
        self.G.setflags(write=False)

    def __repr__(self):
        return f"MdsCode(K={self.K}, c={self.c}, mode={self.mode!r}, field={self.field!r})"

    def encode_parities(self, U: Sequence[int]) -> list[int]:
        if len(U) != self.K:
            raise ValueError(f"message must have {self.K} symbols, got {len(U)}")
        return [self.field.dot(self.G[r], U) for r in range(self.c)]

    def erasure_decode(self, known: Mapping[int, int], erased: Sequence[int],
                       parities: Mapping[int, int]) -> list[int]:
        """Fill the erased symbols from the supplied parities.

        ``known`` maps symbol index -> value for the unerased positions,
        ``parities`` maps parity row index -> parity value. Indices are 0-based.
        The number of parities must equal the number of erasures.
        """
        erased = sorted(erased)
        if len(parities) != len(erased):
            raise ValueError(f"{len(erased)} erasures need exactly that many parities, "
                             f"got {len(parities)}")
        if set(known) | set(erased) != set(range(self.K)) or set(known) & set(erased):
            raise ValueError("known and erased positions must partition 0..K-1")
        out = [0] * self.K
        for j, v in known.items():
            out[j] = int(v)
        if not erased:
            return out
        f = self.field
        rows = sorted(parities)
        A, b = [], []
        for r in rows:
            residual = int(parities[r])
            for j, v in known.items():
                residual ^= f.mul(int(self.G[r][j]), int(v))
            A.append([int(self.G[r][j]) for j in erased])
            b.append(residual)
        try:
            sol = gf_solve(f, A, b)
        except ArithmeticError as exc:
            raise RuntimeError("erasure system singular; MDS property violated") from exc
        for j, v in zip(erased, sol):
            out[j] = v
        return out

    def check_parities(self, candidate: Sequence[int], parity_indices,
                       expected: Sequence[int] | Mapping[int, int]) -> bool:
        """True iff ``G_r . candidate == expected[r]`` for every listed row."""
        return all(self.field.dot(self.G[r], candidate) == int(expected[r])
                   for r in parity_indices)

    def submatrices_nonsingular(self, max_size: int | None = None) -> bool:
        """Exhaustive MDS certificate: every square submatrix of G is invertible."""
        top = min(self.c, self.K) if max_size is None else min(max_size, self.c, self.K)
        for size in range(1, top + 1):
            for rows in combinations(range(self.c), size):
                for cols in combinations(range(self.K), size):
                    sub = [[int(self.G[r][j]) for j in cols] for r in rows]
                    if gf_rank(self.field, sub) < size:
                        return False
        return True
