"""Two-node interactive file synchronization over a noiseless link.

Node A holds x, node B holds y, a copy of x with d bits deleted. B rebuilds x
by exchanging messages with A in synchronous rounds. One round is a batch of
A->B messages followed by a batch of B->A replies, every unresolved segment
being serviced in each round.

Both nodes keep the same segment table. It is derived only from the string
lengths (known to both at the start) and the exchanged messages, so message
kinds and lengths are implied by the table and cost no header bits. A
segment pairs a range of x with a range of y; its deletion count is
d = len_A - len_B. Depending on d:

* d = 0: already in sync, nothing is sent.
* d = 1: A sends the VT syndrome of its range, ceil(log2(L+1)) bits.
* 2 <= d <= delta (``sync_gc`` only): A sends delta+1 GC parity symbols of
  its range; B replies a 2-bit status. An ambiguous decode gets one more
  parity per round up to ``max_parities``, a hopeless one gets the range
  verbatim.
* otherwise: A sends ``center_m``-bit anchors taken from equally spaced
  points of its range, B locates each in its own range and replies the
  offset (or "none"), and the segment splits at every located anchor.

When nothing is left to repair, B sends a checksum of its reconstruction and
A acknowledges with one bit.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bits import as_bits, random_bits
from .channel import sample_deletion_positions, trial_rng
from .gc import GcParams, gc_decode_with_parities, gc_parities
from .mds import ConfigError
from .vt import VtDecodeError, vt_repair, vt_syndrome

STRATEGIES = ("sync_vt", "sync_gc")
SYNC_RECORD_FIELDS = ("strategy", "n", "d", "delta", "seed", "rounds", "total_bits",
                      "success", "reason")


@dataclass(frozen=True)
class SyncConfig:
    delta: int = 2
    center_m: int = 25
    window_slack: int = 0
    checksum_bits: int = 64
    max_rounds: int = 64
    max_anchor_attempts: int = 3
    # cap on GC parity symbols per segment, extra parities included
    max_parities: int | None = None

    def __post_init__(self):
        if self.center_m < 1:
            raise ConfigError(f"center_m must be positive, got {self.center_m}")
        if self.delta < 1:
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.window_slack < 0:
            raise ConfigError("window_slack must be nonnegative")
        if not 1 <= self.checksum_bits <= 64:
            raise ConfigError(f"checksum_bits must be in [1, 64], got {self.checksum_bits}")
        if self.max_parities is not None and self.max_parities < self.c_init:
            raise ConfigError(f"max_parities must be at least c_init={self.c_init}")

    @property
    def c_init(self) -> int:
        return self.delta + 1

    @property
    def c_max(self) -> int:
        return self.max_parities if self.max_parities is not None else self.delta + 3


@dataclass
class Segment:
    a_lo: int
    a_hi: int
    b_lo: int
    b_hi: int
    # active | repairing | synced | fallback
    state: str = "active"
    parities_sent: int = 0
    attempt: int = 0

    @property
    def d(self) -> int:
        return (self.a_hi - self.a_lo) - (self.b_hi - self.b_lo)

    @property
    def length(self) -> int:
        return self.a_hi - self.a_lo


@dataclass
class Message:
    direction: str
    kind: str
    segment: int
    bits: int


@dataclass
class SyncResult:
    rounds: int
    total_bits: int
    success: bool
    reason: str | None
    transcript: list[list[Message]] = field(default_factory=list)

    def dump(self) -> str:
        lines = []
        for r, batch in enumerate(self.transcript, 1):
            for m in batch:
                lines.append(f"{r}\t{m.direction}\t{m.kind}\t{m.segment}\t{m.bits}")
        return "\n".join(lines)


# -- checksum ----------------------------------------------------------------

_CRC64_POLY = 0xC96C5795D7870F42  # ECMA-182, reflected


@lru_cache(maxsize=1)
def _crc64_table():
    table = []
    for i in range(256):
        v = i
        for _ in range(8):
            v = (v >> 1) ^ _CRC64_POLY if v & 1 else v >> 1
        table.append(v)
    return table


def crc64(data: bytes) -> int:
    """CRC-64/XZ (ECMA-182 polynomial, reflected, init and xorout all ones)."""
    table = _crc64_table()
    crc = 0xFFFFFFFFFFFFFFFF
    for b in data:
        crc = table[(crc ^ b) & 0xFF] ^ (crc >> 8)
    return crc ^ 0xFFFFFFFFFFFFFFFF


def bits_checksum(bits, width: int = 64) -> int:
    bits = as_bits(bits)
    data = bits.size.to_bytes(8, "little") + np.packbits(bits).tobytes()
    return crc64(data) & ((1 << width) - 1)


# -- shared plans ------------------------------------------------------------

def _width(values: int) -> int:
    """Bits needed to name one of ``values`` alternatives."""
    return max(1, math.ceil(math.log2(values))) if values > 1 else 0


@lru_cache(maxsize=4096)
def _gc_params(L: int, delta: int, c: int) -> GcParams | None:
    ell = max(2, math.ceil(math.log2(L)))
    while -(-L // ell) + c > (1 << ell):
        ell += 1
    if ell > 16:
        return None
    try:
        return GcParams(L, delta, c, ell, mds_mode="cauchy")
    except ConfigError:
        return None


def _anchor_positions(seg: Segment, threshold: int, m: int) -> list[int]:
    L = seg.length
    P = min(-(-2 * seg.d // threshold), L // (2 * m))
    if P < 2:
        P = 2
    t = seg.attempt
    shift = ((t + 1) // 2) * m * (1 if t % 2 else -1)
    out = []
    for i in range(1, P):
        a = seg.a_lo + (L * i) // P - m // 2 + shift
        a = min(max(a, seg.a_lo), seg.a_hi - m)
        if out and a < out[-1] + m:
            continue
        out.append(a)
    return out


def _plan(seg: Segment, strategy: str, cfg: SyncConfig):
    """Next action for an unresolved segment; a pure function of public state."""
    d, L, m = seg.d, seg.length, cfg.center_m
    threshold = cfg.delta if strategy == "sync_gc" else 1
    if seg.state == "fallback":
        return ("verbatim", None)
    if seg.state == "repairing":
        if seg.parities_sent >= cfg.c_max:
            return ("verbatim", None)
        return ("extra_parity", _gc_params(L, cfg.delta, cfg.c_max))
    if d == 1:
        return ("vt_syndrome", None)
    if d <= threshold:
        params = _gc_params(L, cfg.delta, cfg.c_max)
        if params is not None:
            if L <= cfg.c_init * params.ell:
                return ("verbatim", None)
            return ("gc_parities", params)
    if L < 3 * m or seg.attempt >= cfg.max_anchor_attempts:
        return ("verbatim", None)
    return ("anchor", _anchor_positions(seg, threshold, m))


def find_anchor(pattern, segment, lo: int, hi: int, end: int | None = None) -> int | None:
    """Leftmost start in [lo, hi] where ``pattern`` occurs in ``segment``.

    ``segment`` is a bit array or its ``tobytes()``; the match must also end
    by ``end`` (default: the end of ``segment``).
    """
    data = segment if isinstance(segment, bytes) else as_bits(segment).tobytes()
    needle = as_bits(pattern).tobytes()
    end = len(data) if end is None else min(end, len(data))
    lo = max(lo, 0)
    stop = min(hi + len(needle), end)
    if stop - lo < len(needle):
        return None
    pos = data.find(needle, lo, stop)
    return None if pos == -1 else pos


# -- the two nodes -----------------------------------------------------------

class NodeA:
    """Holder of the reference string; answers with payloads derived from x."""

    def __init__(self, x: np.ndarray):
        self.x = x

    def payload(self, seg: Segment, kind: str, arg, cfg: SyncConfig):
        xs = self.x[seg.a_lo:seg.a_hi]
        if kind == "vt_syndrome":
            return vt_syndrome(xs), _width(seg.length + 1)
        if kind == "gc_parities":
            par = gc_parities(xs, arg)
            return par[:cfg.c_init], cfg.c_init * arg.ell
        if kind == "extra_parity":
            par = gc_parities(xs, arg)
            return par[seg.parities_sent], arg.ell
        if kind == "verbatim":
            return xs.copy(), seg.length
        if kind == "anchor":
            m = cfg.center_m
            return [self.x[a:a + m].copy() for a in arg], m * len(arg)
        raise ValueError(kind)

    def checksum(self, width: int) -> int:
        return bits_checksum(self.x, width)


class NodeB:
    """Holder of the damaged copy; rebuilds x piece by piece."""

    def __init__(self, y: np.ndarray):
        self.y = y
        self._ybytes = y.tobytes()
        self.pieces: dict[int, np.ndarray] = {}
        self.parities: dict[int, list[int]] = {}

    def take_own(self, sid: int, seg: Segment):
        self.pieces[sid] = self.y[seg.b_lo:seg.b_hi].copy()

    def vt(self, sid: int, seg: Segment, syndrome: int):
        try:
            self.pieces[sid] = vt_repair(self.y[seg.b_lo:seg.b_hi], syndrome, seg.length)
        except VtDecodeError:
            # left unrepaired; the final checksum will catch it
            self.pieces[sid] = self.y[seg.b_lo:seg.b_hi].copy()

    def gc(self, sid: int, seg: Segment, params: GcParams, parities) -> str:
        got = self.parities.setdefault(sid, [])
        got.extend(parities)
        out = gc_decode_with_parities(self.y[seg.b_lo:seg.b_hi], got, params)
        if out.success:
            self.pieces[sid] = out.message
        return out.status

    def verbatim(self, sid: int, bits: np.ndarray):
        self.pieces[sid] = bits

    def locate(self, seg: Segment, anchors: list[int], patterns, cfg: SyncConfig):
        """Leftmost placement of each anchor consistent with the earlier ones.

        Returns one (window_size, offset or None) per anchor, offsets being
        relative to the window start.
        """
        m, slack = cfg.center_m, cfg.window_slack
        pa, pb, d_rem = seg.a_lo, seg.b_lo, seg.d
        out = []
        for a, pat in zip(anchors, patterns):
            start = pb + (a - pa) - d_rem - slack
            W = d_rem + 2 * slack + 1
            lo = max(start, pb)
            found = None
            while True:
                pos = find_anchor(pat, self._ybytes, lo, start + W - 1, seg.b_hi)
                if pos is None:
                    break
                # a match implying a negative child deletion count is no match
                if 0 <= (a - pa) - (pos - pb) <= d_rem:
                    found = pos
                    break
                lo = pos + 1
            if found is None:
                out.append((W, None))
                continue
            out.append((W, found - start))
            d_rem -= (a - pa) - (found - pb)
            pa, pb = a + m, found + m
        return out

    def reconstruction(self, order: list[int]) -> np.ndarray:
        if not order:
            return np.zeros(0, dtype=np.uint8)
        return np.concatenate([self.pieces[i] for i in order]).astype(np.uint8)


def _split(seg: Segment, anchors: list[int], replies, m: int, slack: int) -> list[Segment]:
    """Children of ``seg`` after anchoring; anchors that were not found are dropped."""
    pa, pb, d_rem = seg.a_lo, seg.b_lo, seg.d
    kids = []
    for a, (W, off) in zip(anchors, replies):
        if off is None:
            continue
        b = pb + (a - pa) - d_rem - slack + off
        kids.append(Segment(pa, a, pb, b))
        kids.append(Segment(a, a + m, b, b + m, state="synced"))
        d_rem -= (a - pa) - (b - pb)
        pa, pb = a + m, b + m
    kids.append(Segment(pa, seg.a_hi, pb, seg.b_hi))
    return kids


def sync_run(x, y, strategy: str = "sync_gc", config: SyncConfig | None = None,
             keep_transcript: bool = False) -> tuple[SyncResult, np.ndarray]:
    """Synchronize B's copy ``y`` with A's string ``x``.

    ``y`` must be ``x`` with ``len(x) - len(y)`` bits deleted. Returns the
    session result and B's reconstruction.
    """
    if strategy not in STRATEGIES:
        raise ConfigError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    cfg = config or SyncConfig()
    x, y = as_bits(x), as_bits(y)
    if y.size > x.size:
        raise ValueError("B's string is longer than A's; only deletions are supported")
    A, B = NodeA(x), NodeB(y)
    segs: list[Segment] = [Segment(0, x.size, 0, y.size)]
    # ids are positions in an ever-growing list; ``order`` is the A-order of leaves
    order = [0]
    transcript: list[list[Message]] = []
    total = 0
    rounds = 0

    def settle(ids):
        for sid in ids:
            s = segs[sid]
            if s.state == "active" and s.d == 0:
                s.state = "synced"
            if s.state == "synced" and sid not in B.pieces:
                B.take_own(sid, s)

    settle(order)
    while True:
        open_ids = [i for i in order if segs[i].state not in ("synced", "done")]
        if not open_ids:
            break
        if rounds >= cfg.max_rounds:
            res = SyncResult(rounds, total, False, "round_limit",
                             transcript if keep_transcript else [])
            return res, B.reconstruction([i for i in order if i in B.pieces])
        rounds += 1
        batch: list[Message] = []
        new_order = []
        for sid in order:
            seg = segs[sid]
            if sid not in open_ids:
                new_order.append(sid)
                continue
            kind, arg = _plan(seg, strategy, cfg)
            payload, nbits = A.payload(seg, kind, arg, cfg)
            batch.append(Message("A->B", kind, sid, nbits))
            total += nbits
            if kind == "vt_syndrome":
                B.vt(sid, seg, payload)
                seg.state = "done"
            elif kind == "verbatim":
                B.verbatim(sid, payload)
                seg.state = "done"
            elif kind in ("gc_parities", "extra_parity"):
                sent = payload if kind == "gc_parities" else [payload]
                seg.parities_sent += len(sent)
                status = B.gc(sid, seg, arg, sent)
                batch.append(Message("B->A", "gc_status", sid, 2))
                total += 2
                if status == "success":
                    seg.state = "done"
                elif status == "ambiguous":
                    seg.state = "repairing"
                else:
                    seg.state = "fallback"
            else:
                replies = B.locate(seg, arg, payload, cfg)
                nb = sum(_width(W + 1) for W, _ in replies)
                batch.append(Message("B->A", "anchor_reply", sid, nb))
                total += nb
                if all(off is None for _, off in replies):
                    seg.attempt += 1
                    new_order.append(sid)
                    continue
                seg.state = "done"
                kids = _split(seg, arg, replies, cfg.center_m, cfg.window_slack)
                for kid in kids:
                    segs.append(kid)
                    new_order.append(len(segs) - 1)
                continue
            new_order.append(sid)
        # split parents are replaced by their children
        order = [i for i in new_order if not (segs[i].state == "done" and i not in B.pieces)]
        settle(order)
        transcript.append(batch)

    recon = B.reconstruction(order)
    rounds += 1
    check = bits_checksum(recon, cfg.checksum_bits)
    ok = check == A.checksum(cfg.checksum_bits)
    total += cfg.checksum_bits + 1
    transcript.append([Message("B->A", "checksum", -1, cfg.checksum_bits),
                       Message("A->B", "ack", -1, 1)])
    res = SyncResult(rounds, total, ok, None if ok else "verification_failed",
                     transcript if keep_transcript else [])
    return res, recon


# -- seeded harness ----------------------------------------------------------

def make_instance(n: int, d: int, seed: int, index: int = 0):
    """Random n-bit x and a copy with d uniformly placed deletions."""
    rng = trial_rng(seed, index)
    x = random_bits(n, rng)
    pos = sample_deletion_positions(n, d, rng)
    y = np.delete(x, np.asarray(pos, dtype=np.int64) - 1)
    return x, y


def _sync_chunk(n, d, strategies, cfg, seed, lo, hi):
    recs = []
    for run in range(lo, hi):
        x, y = make_instance(n, d, seed, run)
        for strategy in strategies:
            res, recon = sync_run(x, y, strategy, cfg)
            recs.append({
                "strategy": strategy, "n": n, "d": d, "delta": cfg.delta, "seed": seed,
                "rounds": res.rounds, "total_bits": res.total_bits,
                "success": res.success, "reason": res.reason, "run": run,
                "exact": bool(recon.size == x.size and np.array_equal(recon, x)),
                "center_m": cfg.center_m, "window_slack": cfg.window_slack,
                "checksum_bits": cfg.checksum_bits, "max_rounds": cfg.max_rounds,
            })
    return recs


def sync_experiment(n: int, d: int, runs: int, seed: int = 0,
                    strategies=STRATEGIES, config: SyncConfig | None = None,
                    jobs: int = 1) -> list[dict]:
    """One record per (run, strategy); both strategies see the same instances."""
    cfg = config or SyncConfig()
    for s in strategies:
        if s not in STRATEGIES:
            raise ConfigError(f"unknown strategy {s!r}")
    size = max(1, -(-runs // (4 * max(jobs, 1))))
    parts = [(lo, min(lo + size, runs)) for lo in range(0, runs, size)]
    args = [(n, d, tuple(strategies), cfg, seed, lo, hi) for lo, hi in parts]
    if jobs <= 1 or len(parts) <= 1:
        chunks = [_sync_chunk(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sync_chunk, *zip(*args)))
    return [r for c in chunks for r in c]


def summarize(records: list[dict]) -> dict[str, dict]:
    out = {}
    for s in dict.fromkeys(r["strategy"] for r in records):
        rs = [r for r in records if r["strategy"] == s]
        out[s] = {
            "runs": len(rs),
            "success_rate": sum(r["success"] for r in rs) / len(rs),
            "exact_rate": sum(r["exact"] for r in rs) / len(rs),
            "mean_rounds": sum(r["rounds"] for r in rs) / len(rs),
            "mean_total_bits": sum(r["total_bits"] for r in rs) / len(rs),
        }
    return out
