"""Guess & Check codes: encoder and guess-and-check decoder.

Encoding chunks a k-bit message into K blocks of ``ell`` bits, maps each block
to a GF(2^ell) symbol, appends c systematic MDS parities, and writes each
parity bit (delta+1) times in a row.

Decoding recovers the parities from the repetition-coded tail, then tries
every way of spreading the deletions over the blocks. A hypothesis erases
the blocks it touches, fills them from the first ``e`` parities, and
survives only if the remaining parities hold and every fill is a
supersequence of the bits it replaced. The message is returned when all
surviving hypotheses agree.

When ``ell`` does not divide ``k`` the last block is short: it carries the
final ``k mod ell`` bits as the low-order bits of its symbol and the missing
high-order bits are fixed zeros that are never transmitted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import _kernel
from .bits import as_bits, bits_to_int, int_to_bits, is_subsequence
from .gf2m import Field, get_field
from .mds import ConfigError, MdsCode

MAX_CANDIDATES = 64


def default_ell(k: int) -> int:
    return max(2, math.ceil(math.log2(k)))


def case_count(K: int, d_sys: int) -> int:
    """Number of ways to spread ``d_sys`` deletions over ``K`` blocks."""
    return math.comb(K + d_sys - 1, d_sys)


@dataclass(frozen=True)
class GcParams:
    """Code configuration.

    ``ell`` defaults to ceil(log2 k); ``mds_mode="auto"`` picks the
    ones and alpha-power rows for c = 2 and the Cauchy generator otherwise.
    """

    k: int
    delta: int
    c: int
    ell: int | None = None
    poly: int | None = None
    mds_mode: str = "auto"

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.delta < 0:
            raise ConfigError(f"delta must be nonnegative, got {self.delta}")
        if self.c <= self.delta:
            raise ConfigError(f"need c > delta, got c={self.c}, delta={self.delta}")
        if self.ell is None:
            object.__setattr__(self, "ell", default_ell(self.k))
        if not 2 <= self.ell <= 16:
            raise ConfigError(f"block length ell={self.ell} outside [2, 16]")
        if self.K + self.c > (1 << self.ell):
            raise ConfigError(
                f"K + c = {self.K + self.c} exceeds 2^ell = {1 << self.ell}; increase ell")
        if self.mds_mode == "auto":
            object.__setattr__(self, "mds_mode", "paper_compatible" if self.c == 2 else "cauchy")
        # builds and validates field and generator
        self.mds

    @property
    def K(self) -> int:
        return -(-self.k // self.ell)

    @property
    def n(self) -> int:
        return self.k + self.c * (self.delta + 1) * self.ell

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def field(self) -> Field:
        return get_field(self.ell, self.poly)

    @cached_property
    def mds(self) -> MdsCode:
        return MdsCode(self.field, self.K, self.c, self.mds_mode)

    @cached_property
    def block_len(self) -> np.ndarray:
        lens = np.full(self.K, self.ell, dtype=np.int64)
        lens[-1] = self.k - self.ell * (self.K - 1)
        return lens

    @cached_property
    def block_start(self) -> np.ndarray:
        return np.arange(self.K, dtype=np.int64) * self.ell

    @cached_property
    def _tables(self):
        exp, log, order = _kernel.field_tables(self.field)
        G = np.ascontiguousarray(self.mds.G, dtype=np.int64).copy()
        return exp, log, order, G


@dataclass(frozen=True)
class CaseHypothesis:
    d_sys: int
    d_par: int
    per_block: tuple[int, ...]


@dataclass
class CaseCandidate:
    symbols: list[int]
    bits: np.ndarray
    fills: dict[int, int]


@dataclass
class DecodeOutcome:
    """Decoder verdict.

    ``status`` is ``"success"``, ``"ambiguous"`` (two or more distinct
    messages survive) or ``"no_valid_case"`` (nothing survives, which only
    happens when the channel exceeded the design budget).
    """

    status: str
    message: np.ndarray | None
    candidates: list[tuple[int, ...]]
    possible_cases: int
    cases_examined: dict[int, int] = dc_field(default_factory=dict)
    distinct_candidates: int = 0

    @property
    def success(self) -> bool:
        return self.status == "success"


# -- Blocks I-IV --------------------------------------------------------------

def message_symbols(u, params: GcParams) -> list[int]:
    u = as_bits(u)
    if u.size != params.k:
        raise ValueError(f"message must have k={params.k} bits, got {u.size}")
    return [bits_to_int(u[s:s + L]) for s, L in zip(params.block_start, params.block_len)]


def symbols_to_bits(symbols: Sequence[int], params: GcParams) -> np.ndarray:
    parts = [int_to_bits(int(v), int(L)) for v, L in zip(symbols, params.block_len)]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)


def gc_parities(u, params: GcParams) -> list[int]:
    return params.mds.encode_parities(message_symbols(u, params))


def precoded_bits(u, params: GcParams) -> np.ndarray:
    """Codeword before the repetition step: message followed by parity bits."""
    u = as_bits(u)
    par = gc_parities(u, params)
    return np.concatenate([u] + [int_to_bits(p, params.ell) for p in par])


def gc_encode(u, params: GcParams) -> np.ndarray:
    u = as_bits(u)
    par = gc_parities(u, params)
    pbits = np.concatenate([int_to_bits(p, params.ell) for p in par])
    return np.concatenate([u, np.repeat(pbits, params.delta + 1)])


def recover_parities(y, params: GcParams) -> list[int]:
    """Read the parity symbols back from the repetition-coded tail.

    Parity bit ``i`` counted from the end sits at right offset
    ``(i-1)(delta+1)`` of the received string whatever the placement of at
    most delta deletions.
    """
    y = as_bits(y)
    lost = params.n - y.size
    if not 0 <= lost <= params.delta:
        raise ValueError(f"received length {y.size} outside [{params.n - params.delta}, {params.n}]")
    r = params.delta + 1
    nbits = params.c * params.ell
    tail = np.array([y[y.size - 1 - i * r] for i in range(nbits)][::-1], dtype=np.uint8)
    return [bits_to_int(tail[i:i + params.ell]) for i in range(0, nbits, params.ell)]


# -- reference path: one hypothesis at a time ---------------------------------

def enumerate_cases(K: int, d_sys: int) -> list[tuple[int, ...]]:
    """All weak compositions of ``d_sys`` into ``K`` parts.

    Ordered so that earlier blocks absorb deletions first; for a single
    deletion case ``i`` puts it in block ``i``.
    """
    out = []
    for combo in combinations_with_replacement(range(K), d_sys):
        counts = [0] * K
        for j in combo:
            counts[j] += 1
        out.append(tuple(counts))
    return out


def _layout(hyp: CaseHypothesis, params: GcParams):
    """(start in y_sys, received length) per block, or None if impossible."""
    pos = 0
    out = []
    for L, cnt in zip(params.block_len.tolist(), hyp.per_block):
        if cnt > L:
            return None
        out.append((pos, L - cnt))
        pos += L - cnt
    return out


def decode_case(y_sys, hyp: CaseHypothesis, parities: Sequence[int],
                params: GcParams) -> CaseCandidate | None:
    """Chunk ``y_sys`` under ``hyp`` and fill the erased blocks.

    Returns None when the hypothesis cannot apply (more deletions in a block
    than it has bits).
    """
    y_sys = as_bits(y_sys)
    if y_sys.size != params.k - hyp.d_sys:
        raise ValueError("systematic part length does not match hypothesis")
    layout = _layout(hyp, params)
    if layout is None:
        return None
    erased = [j for j, cnt in enumerate(hyp.per_block) if cnt]
    if len(erased) > len(parities):
        raise ValueError(f"{len(erased)} erased blocks but only {len(parities)} parities")
    known = {j: bits_to_int(y_sys[s:s + L])
             for j, (s, L) in enumerate(layout) if not hyp.per_block[j]}
    used = {r: int(parities[r]) for r in range(len(erased))}
    symbols = params.mds.erasure_decode(known, erased, used)
    fills = {j: symbols[j] for j in erased}
    bits = None
    if all(symbols[j] < (1 << int(params.block_len[j])) for j in erased):
        bits = symbols_to_bits(symbols, params)
    return CaseCandidate(symbols=symbols, bits=bits, fills=fills)


def case_criteria(candidate: CaseCandidate, hyp: CaseHypothesis, y_sys,
                  parities: Sequence[int], params: GcParams) -> tuple[bool, bool]:
    """(Criterion 1, Criterion 2) for a decoded hypothesis.

    Criterion 1: the parities not used to fill the erasures all hold.
    Criterion 2: every fill is a supersequence of its received sub-block.
    """
    y_sys = as_bits(y_sys)
    e = len(candidate.fills)
    crit1 = params.mds.check_parities(candidate.symbols, range(e, len(parities)), parities)
    layout = _layout(hyp, params)
    crit2 = True
    for j, v in candidate.fills.items():
        L = int(params.block_len[j])
        if v >> L:
            crit2 = False
            break
        s, got = layout[j]
        if not is_subsequence(y_sys[s:s + got], int_to_bits(v, L)):
            crit2 = False
            break
    return crit1, crit2


def check_case(candidate, hyp, y_sys, parities, params) -> bool:
    crit1, crit2 = case_criteria(candidate, hyp, y_sys, parities, params)
    return crit1 and crit2


def _outcome(cands: list[tuple[int, ...]], n_distinct: int, possible: int,
             examined: dict[int, int], params: GcParams) -> DecodeOutcome:
    if n_distinct == 1:
        return DecodeOutcome("success", symbols_to_bits(cands[0], params), cands, possible,
                             examined, 1)
    status = "ambiguous" if n_distinct > 1 else "no_valid_case"
    return DecodeOutcome(status, None, cands, possible, examined, n_distinct)


def reference_decode(y_sys_full, parities: Sequence[int], params: GcParams,
                     d_values: Sequence[int]) -> DecodeOutcome:
    """Straightforward decoder built from decode_case / check_case.

    ``y_sys_full`` is the received string (or systematic part); split ``D``
    uses its first ``k - D`` bits. Slow; used to cross-check the compiled sweep.
    """
    y = as_bits(y_sys_full)
    total = max(d_values)
    seen: list[tuple[int, ...]] = []
    possible = 0
    examined = {}
    for D in d_values:
        y_sys = y[:params.k - D]
        cases = enumerate_cases(params.K, D)
        examined[D] = len(cases)
        for per_block in cases:
            hyp = CaseHypothesis(D, total - D, per_block)
            if sum(1 for v in per_block if v) > len(parities):
                continue
            cand = decode_case(y_sys, hyp, parities, params)
            if cand is None or not check_case(cand, hyp, y_sys, parities, params):
                continue
            possible += 1
            key = tuple(cand.symbols)
            if key not in seen:
                seen.append(key)
    return _outcome(seen, len(seen), possible, examined, params)


# -- compiled path ---------------------------------------------------------------

def _sweep(y: np.ndarray, d_lo: int, d_hi: int, parities: Sequence[int],
           params: GcParams) -> DecodeOutcome:
    exp, log, order, G = params._tables
    par = np.zeros(max(params.c, 1), dtype=np.int64)
    par[:len(parities)] = parities
    cands = np.zeros((MAX_CANDIDATES, params.K), dtype=np.int64)
    possible, distinct, examined = _kernel.decode_sweep(
        np.ascontiguousarray(y, dtype=np.uint8), d_lo, d_hi, params.block_start,
        params.block_len, G, par, len(parities), exp, log, order, cands)
    kept = [tuple(int(v) for v in row) for row in cands[:min(distinct, MAX_CANDIDATES)]]
    exam = {D: int(examined[D]) for D in range(d_lo, d_hi + 1)}
    return _outcome(kept, int(distinct), int(possible), exam, params)


def gc_decode(y, params: GcParams) -> DecodeOutcome:
    """Decode a received string carrying at most delta deletions.

    The deletion count is inferred from the length and every split between
    the systematic part and the repetition-coded parity tail is tried.
    """
    y = as_bits(y)
    lost = params.n - y.size
    if not 0 <= lost <= params.delta:
        raise ValueError(
            f"received length {y.size} outside [{params.n - params.delta}, {params.n}]")
    parities = recover_parities(y, params)
    return _sweep(y, 0, lost, parities, params)


def gc_decode_with_parities(y_sys, parities: Sequence[int], params: GcParams) -> DecodeOutcome:
    """Decode a systematic part given the first ``len(parities)`` parities directly.

    Used when parities arrive over a clean side channel. Hypotheses that
    erase more blocks than there are parities are skipped.
    """
    y_sys = as_bits(y_sys)
    D = params.k - y_sys.size
    if not 0 <= D <= params.delta:
        raise ValueError(f"systematic length {y_sys.size} outside "
                         f"[{params.k - params.delta}, {params.k}]")
    if len(parities) > params.c:
        raise ValueError(f"at most c={params.c} parities, got {len(parities)}")
    return _sweep(y_sys, D, D, list(parities), params)
