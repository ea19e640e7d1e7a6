"""Command-line front end.

Exit status is 0 on success, 1 when decoding (or synchronization) fails and
2 on usage or configuration errors. Errors are reported as JSON objects with
an ``error`` code on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bits import bits_to_int, to_str
from .channel import deletion_channel, trial_rng
from .experiments import (RECORD_FIELDS, InstanceTooLarge, TrialConfig, bound_delta1,
                          exhaustive_failure_rate, run_trials)
from .gc import GcParams, gc_decode, gc_decode_with_parities, gc_encode, precoded_bits
from .io import BIT_FORMATS, dumps_records, read_bits, write_bits
from .mds import ConfigError
from .sync import STRATEGIES, SYNC_RECORD_FIELDS, SyncConfig, make_instance, sync_experiment, sync_run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "delta": 1, "c": None, "ell": None, "poly": None, "mds_mode": "auto",
    "trials": 1000, "seed": 0, "jobs": 1, "format": "json", "bits": "text",
    "strategy": "both", "center_bits": 25, "max_rounds": 64, "window_slack": 0,
    "checksum_bits": 64, "runs": 100, "n": 100000, "d": None, "deletions": None,
    "max_work": 10**7,
}
# per-command overrides of DEFAULTS
COMMAND_DEFAULTS = {"sync": {"delta": 2}}


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    return int(text, 0)


def _add_code_flags(p):
    p.add_argument("--k", type=int, required=False, help="message length in bits")
    p.add_argument("--delta", type=int, help="deletions the code is designed for")
    p.add_argument("--c", type=int, help="number of MDS parity symbols (default delta+1)")
    p.add_argument("--ell", type=int, help="bits per symbol (default ceil(log2 k))")
    p.add_argument("--poly", type=_int, help="primitive polynomial, e.g. 0x13")
    p.add_argument("--mds-mode", choices=("auto", "cauchy", "paper_compatible"))


def _add_io_flags(p):
    p.add_argument("--input", help="input bit file")
    p.add_argument("--output", help="output file (stdout when omitted)")
    p.add_argument("--bits", choices=BIT_FORMATS, help="bit file format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guesscheck",
                                     description="Guess & Check codes for deletion channels")
    parser.add_argument("--config", help="flat key=value file; flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="message file -> codeword file")
    _add_code_flags(p)
    _add_io_flags(p)
    p.add_argument("--precoded", action="store_true",
                   help="stop before repeating the parity bits")

    p = sub.add_parser("corrupt", help="delete random bits from a codeword")
    _add_io_flags(p)
    p.add_argument("--delta", type=int, help="number of bits to delete")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("decode", help="received file -> message or failure report")
    _add_code_flags(p)
    _add_io_flags(p)
    p.add_argument("--precoded", action="store_true",
                   help="parity bits were sent once and arrived intact")

    p = sub.add_parser("experiment", help="Monte Carlo failure rate")
    _add_code_flags(p)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--deletions", type=int, help="deletions per trial (default delta)")
    p.add_argument("--timing", action="store_true", help="measure mean decode time")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output")

    p = sub.add_parser("exhaustive", help="exact failure rate of a small code")
    _add_code_flags(p)
    p.add_argument("--jobs", type=int)
    p.add_argument("--max-work", type=int)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output")

    p = sub.add_parser("bound", help="single-deletion failure bound")
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output")

    p = sub.add_parser("sync", help="synchronize two copies of a file")
    p.add_argument("--input", help="A's file; a random string of --n bits when omitted")
    p.add_argument("--bits", choices=BIT_FORMATS)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, help="deletions applied to B's copy")
    p.add_argument("--delta", type=int)
    p.add_argument("--strategy", choices=STRATEGIES + ("both",))
    p.add_argument("--center-bits", type=int)
    p.add_argument("--window-slack", type=int)
    p.add_argument("--checksum-bits", type=int)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--runs", type=int, help="seeded random runs (ignored with --input)")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--transcript", action="store_true", help="dump messages to stderr")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output")
    return parser


def load_config(path) -> dict:
    out = {}
    for num, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _resolve(args) -> argparse.Namespace:
    conf = load_config(args.config) if args.config else {}
    defaults = {**DEFAULTS, **COMMAND_DEFAULTS.get(args.command, {})}
    for key, value in conf.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            current = defaults.get(key)
            if key == "poly":
                value = _int(value)
            elif isinstance(current, int) or key in ("k", "c", "ell", "d", "deletions"):
                value = int(value)
            setattr(args, key, value)
    for key, value in defaults.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    return args


def _params(args) -> GcParams:
    if args.k is None:
        raise UsageError("--k is required")
    c = args.c if args.c is not None else args.delta + 1
    return GcParams(args.k, args.delta, c, args.ell, args.poly, args.mds_mode)


def _config_record(p: GcParams) -> dict:
    return {"k": p.k, "delta": p.delta, "c": p.c, "ell": p.ell,
            "poly": p.field.prim_poly, "mds_mode": p.mds_mode, "n": p.n}


def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _input_bits(args):
    if not args.input:
        raise UsageError("--input is required")
    return read_bits(args.input, args.bits)


def cmd_encode(args) -> int:
    p = _params(args)
    u = _input_bits(args)
    x = precoded_bits(u, p) if args.precoded else gc_encode(u, p)
    rec = {"command": "encode", **_config_record(p), "precoded": args.precoded,
           "length": int(x.size)}
    if args.output:
        write_bits(args.output, x, args.bits)
        rec["output"] = args.output
        print(json.dumps(rec))
    else:
        print(to_str(x))
    return EXIT_OK


def cmd_corrupt(args) -> int:
    x = _input_bits(args)
    rng = trial_rng(args.seed, 0)
    y, pos = deletion_channel(x, args.delta, rng)
    side = {"seed": args.seed, "deletions": args.delta, "positions": pos,
            "input_length": int(x.size)}
    if args.output:
        write_bits(args.output, y, args.bits)
        Path(args.output + ".positions.json").write_text(json.dumps(side) + "\n")
        print(json.dumps({"command": "corrupt", "output": args.output, **side}))
    else:
        print(json.dumps({"command": "corrupt", "received": to_str(y), **side}))
    return EXIT_OK


def cmd_decode(args) -> int:
    p = _params(args)
    y = _input_bits(args)
    try:
        if args.precoded:
            nbits = p.c * p.ell
            if y.size <= nbits:
                raise ValueError(f"received {y.size} bits, need more than {nbits}")
            tail = y[y.size - nbits:]
            parities = [bits_to_int(tail[i:i + p.ell]) for i in range(0, nbits, p.ell)]
            out = gc_decode_with_parities(y[:y.size - nbits], parities, p)
        else:
            out = gc_decode(y, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = {"command": "decode", **_config_record(p), "precoded": args.precoded,
           "status": out.status,
           "candidates": out.distinct_candidates,
           "candidate_symbols": [[p.field.power_repr(s) for s in cand] for cand in out.candidates],
           "possible_cases": out.possible_cases,
           "cases_examined": {str(k): v for k, v in out.cases_examined.items()}}
    if out.success:
        rec["message"] = to_str(out.message)
        if args.output:
            write_bits(args.output, out.message, args.bits)
        print(json.dumps(rec))
        return EXIT_OK
    rec["reason"] = out.status
    print(json.dumps(rec))
    return EXIT_FAIL


def cmd_experiment(args) -> int:
    p = _params(args)
    cfg = TrialConfig(p.k, p.delta, p.c, args.trials, args.seed, p.ell, args.poly,
                      args.mds_mode, args.deletions)
    stats = run_trials(cfg, jobs=args.jobs, timing=args.timing)
    _emit(dumps_records([stats.record()], args.format, RECORD_FIELDS), args.output)
    return EXIT_OK


def cmd_exhaustive(args) -> int:
    p = _params(args)
    try:
        res = exhaustive_failure_rate(p.k, p.delta, p.c, p.ell, p.mds_mode,
                                      max_work=args.max_work, jobs=args.jobs)
    except InstanceTooLarge as exc:
        print(json.dumps({"error": "instance_too_large", "message": str(exc)}))
        return EXIT_USAGE
    _emit(dumps_records([res.record()], args.format), args.output)
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.k is None or args.c is None:
        raise UsageError("--k and --c are required")
    if args.c < 2 or args.k < 2:
        raise UsageError("bound needs k >= 2 and c >= 2")
    rec = {"k": args.k, "c": args.c, "delta": 1, "bound": bound_delta1(args.k, args.c)}
    _emit(dumps_records([rec], args.format), args.output)
    return EXIT_OK


def cmd_sync(args) -> int:
    cfg = SyncConfig(delta=args.delta,
                     center_m=args.center_bits, window_slack=args.window_slack,
                     checksum_bits=args.checksum_bits, max_rounds=args.max_rounds)
    strategies = STRATEGIES if args.strategy == "both" else (args.strategy,)
    d = args.d if args.d is not None else 0
    if args.input:
        x = read_bits(args.input, args.bits)
        rng = trial_rng(args.seed, 0)
        y, _ = deletion_channel(x, d, rng)
        records = []
        for s in strategies:
            res, recon = sync_run(x, y, s, cfg, keep_transcript=args.transcript)
            if args.transcript:
                print(res.dump(), file=sys.stderr)
            records.append({"strategy": s, "n": int(x.size), "d": d, "delta": cfg.delta,
                            "seed": args.seed, "rounds": res.rounds,
                            "total_bits": res.total_bits, "success": res.success,
                            "reason": res.reason, "run": 0,
                            "exact": bool(np.array_equal(recon, x)),
                            "center_m": cfg.center_m, "window_slack": cfg.window_slack,
                            "checksum_bits": cfg.checksum_bits,
                            "max_rounds": cfg.max_rounds})
    else:
        if args.transcript:
            for run in range(args.runs):
                x, y = make_instance(args.n, d, args.seed, run)
                for s in strategies:
                    res, _ = sync_run(x, y, s, cfg, keep_transcript=True)
                    print(f"# run {run} {s}\n{res.dump()}", file=sys.stderr)
        records = sync_experiment(args.n, d, args.runs, args.seed, strategies, cfg, args.jobs)
    _emit(dumps_records(records, args.format, SYNC_RECORD_FIELDS), args.output)
    return EXIT_OK if all(r["success"] for r in records) else EXIT_FAIL


COMMANDS = {"encode": cmd_encode, "corrupt": cmd_corrupt, "decode": cmd_decode,
            "experiment": cmd_experiment, "exhaustive": cmd_exhaustive,
            "bound": cmd_bound, "sync": cmd_sync}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        args = _resolve(args)
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, ValueError, OSError) as exc:
        code = "config_error" if isinstance(exc, ConfigError) else "usage_error"
        print(json.dumps({"error": code, "message": str(exc)}))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
