"""Decoding-failure experiments: Monte Carlo, exhaustive enumeration, bounds."""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.stats import beta

from .bits import random_bits
from .channel import sample_deletion_positions, trial_rng
from .gc import (GcParams, case_count, gc_decode, gc_decode_with_parities, gc_encode,
                 gc_parities)

RECORD_FIELDS = ("k", "delta", "c", "ell", "trials", "seed", "failures", "wrong_decodes",
                 "rate", "ci_low", "ci_high", "rate_R", "case_count", "mean_decode_us")


@dataclass(frozen=True)
class TrialConfig:
    k: int
    delta: int
    c: int
    trials: int
    seed: int = 0
    ell: int | None = None
    poly: int | None = None
    mds_mode: str = "auto"
    # deletions injected per trial; defaults to delta
    deletions: int | None = None

    def params(self) -> GcParams:
        return GcParams(self.k, self.delta, self.c, self.ell, self.poly, self.mds_mode)

    @property
    def injected(self) -> int:
        return self.delta if self.deletions is None else self.deletions


@dataclass
class FailureStats:
    k: int
    delta: int
    c: int
    ell: int
    trials: int
    seed: int
    failures: int
    wrong_decodes: int
    rate: float
    ci_low: float
    ci_high: float
    rate_R: float
    case_count: int
    mean_decode_us: float | None
    no_valid_case: int = 0
    deletions: int = 0
    poly: int = 0
    mds_mode: str = ""

    def record(self) -> dict:
        """Flat result record; the fixed fields come first in a fixed order."""
        d = asdict(self)
        out = {key: d[key] for key in RECORD_FIELDS}
        out.update((f.name, d[f.name]) for f in fields(self) if f.name not in out)
        return out


def clopper_pearson(failures: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    a = (1 - level) / 2
    lo = 0.0 if failures == 0 else float(beta.ppf(a, failures, trials - failures + 1))
    hi = 1.0 if failures == trials else float(beta.ppf(1 - a, failures + 1, trials - failures))
    return lo, hi


def _run_chunk(config: TrialConfig, start: int, stop: int, timing: bool):
    params = config.params()
    failures = wrong = novalid = 0
    elapsed = 0.0
    for i in range(start, stop):
        rng = trial_rng(config.seed, i)
        u = random_bits(config.k, rng)
        x = gc_encode(u, params)
        pos = sample_deletion_positions(params.n, config.injected, rng)
        y = np.delete(x, np.asarray(pos, dtype=np.int64) - 1)
        t0 = time.perf_counter() if timing else 0.0
        out = gc_decode(y, params)
        if timing:
            elapsed += time.perf_counter() - t0
        if out.status == "success":
            if not np.array_equal(out.message, u):
                wrong += 1
        elif out.status == "ambiguous":
            failures += 1
        else:
            novalid += 1
    return failures, wrong, novalid, elapsed


def _chunks(total: int, jobs: int):
    size = max(1, -(-total // (4 * jobs)))
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def run_trials(config: TrialConfig, jobs: int = 1, timing: bool = False) -> FailureStats:
    """Monte Carlo estimate of the decoding-failure probability.

    Each trial draws a uniform message and ``config.injected`` uniformly placed
    deletions over the whole codeword, parity tail included. Trial ``i`` uses
    its own random stream, so the tallies do not depend on ``jobs``. Decode
    time is only measured when ``timing`` is set, keeping default records
    reproducible byte for byte.
    """
    params = config.params()
    if config.injected > config.delta:
        raise ValueError("cannot inject more deletions than the design budget")
    parts = _chunks(config.trials, jobs)
    if jobs <= 1 or len(parts) <= 1:
        results = [_run_chunk(config, s, e, timing) for s, e in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_chunk, [config] * len(parts),
                                    [s for s, _ in parts], [e for _, e in parts],
                                    [timing] * len(parts)))
    failures = sum(r[0] for r in results)
    wrong = sum(r[1] for r in results)
    novalid = sum(r[2] for r in results)
    lo, hi = clopper_pearson(failures, config.trials)
    mean_us = None
    if timing and config.trials:
        mean_us = round(1e6 * sum(r[3] for r in results) / config.trials, 3)
    return FailureStats(
        k=config.k, delta=config.delta, c=config.c, ell=params.ell, trials=config.trials,
        seed=config.seed, failures=failures, wrong_decodes=wrong,
        rate=failures / config.trials if config.trials else 0.0,
        ci_low=lo, ci_high=hi, rate_R=params.rate,
        case_count=case_count(params.K, config.delta), mean_decode_us=mean_us,
        no_valid_case=novalid, deletions=config.injected, poly=params.field.prim_poly,
        mds_mode=params.mds_mode)


@dataclass
class ExhaustiveResult:
    k: int
    delta: int
    c: int
    ell: int
    total: int
    failures: int
    wrong_decodes: int
    no_valid_case: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.failures, self.total)

    def record(self) -> dict:
        d = asdict(self)
        d["rate"] = float(self.rate)
        d["rate_exact"] = str(self.rate)
        return d


class InstanceTooLarge(ValueError):
    pass


def _exhaustive_chunk(params: GcParams, lo: int, hi: int):
    k = params.k
    patterns = list(combinations(range(params.n), params.delta))
    keep = np.ones((len(patterns), params.n), dtype=bool)
    for row, pat in enumerate(patterns):
        keep[row, list(pat)] = False
    shifts = np.arange(k - 1, -1, -1)
    failures = wrong = novalid = 0
    for value in range(lo, hi):
        u = ((value >> shifts) & 1).astype(np.uint8)
        x = gc_encode(u, params)
        received: dict[bytes, int] = {}
        for row in range(len(patterns)):
            key = x[keep[row]].tobytes()
            received[key] = received.get(key, 0) + 1
        for key, mult in received.items():
            out = gc_decode(np.frombuffer(key, dtype=np.uint8), params)
            if out.status == "success":
                if not np.array_equal(out.message, u):
                    wrong += mult
            elif out.status == "ambiguous":
                failures += mult
            else:
                novalid += mult
    return failures, wrong, novalid


def exhaustive_failure_rate(k: int, delta: int, c: int, ell: int | None = None,
                            mds_mode: str = "auto", max_work: int = 10**7,
                            jobs: int = 1) -> ExhaustiveResult:
    """Exact failure probability over all messages and all deletion patterns.

    Every (message, set of ``delta`` deleted codeword positions) pair has the
    same weight. Patterns producing the same received string are decoded once.
    """
    params = GcParams(k, delta, c, ell, mds_mode=mds_mode)
    work = (1 << k) * math.comb(params.n, delta)
    if work > max_work:
        raise InstanceTooLarge(
            f"{1 << k} messages x {math.comb(params.n, delta)} patterns = {work} "
            f"decodes exceeds the limit of {max_work}")
    parts = _chunks(1 << k, jobs)
    if jobs <= 1 or len(parts) <= 1:
        results = [_exhaustive_chunk(params, lo, hi) for lo, hi in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_exhaustive_chunk, [params] * len(parts),
                                    [lo for lo, _ in parts], [hi for _, hi in parts]))
    failures, wrong, novalid = (sum(r[i] for r in results) for i in range(3))
    return ExhaustiveResult(k, delta, c, params.ell, work, failures, wrong, novalid)


def parity_sweep(k: int, delta: int, cs, trials: int, seed: int = 0,
                 ell: int | None = None) -> dict[int, int]:
    """Failure counts of the same instances decoded with growing parity sets.

    Each trial deletes ``delta`` uniformly placed message bits and decodes
    with the first c Cauchy parities for every c in ``cs``. Cauchy parity
    rows do not depend on how many are generated, so a larger c only adds
    checks and the counts are non-increasing in c.
    """
    cs = sorted(cs)
    params = GcParams(k, delta, cs[-1], ell, mds_mode="cauchy")
    counts = {c: 0 for c in cs}
    for i in range(trials):
        rng = trial_rng(seed, i)
        u = random_bits(k, rng)
        par = gc_parities(u, params)
        pos = sample_deletion_positions(k, delta, rng)
        y = np.delete(u, np.asarray(pos, dtype=np.int64) - 1)
        for c in cs:
            if gc_decode_with_parities(y, par[:c], params).status != "success":
                counts[c] += 1
    return counts


def bound_delta1(k: int, c: int) -> float:
    """Upper bound 2 / (k^(c-2) log2 k) on the single-deletion failure probability."""
    if c < 2:
        raise ValueError("bound needs c >= 2")
    return 2.0 / (k ** (c - 2) * math.log2(k))


def failure_order(k: int, delta: int, c: int) -> str:
    """Order of the general failure bound, reported symbolically."""
    return f"O(k^{2 * delta - c} / log^{delta} k) = O({k ** (2 * delta - c) / math.log2(k) ** delta:.3g})"


def rate_and_case_report(k: int, delta: int, c: int, ell: int | None = None) -> dict:
    p = GcParams(k, delta, c, ell)
    return {"k": k, "delta": delta, "c": c, "ell": p.ell, "n": p.n, "K": p.K,
            "rate_R": p.rate, "redundancy": p.redundancy,
            "case_count": case_count(p.K, delta)}
