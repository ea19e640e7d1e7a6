"""Bit files and result records.

Bit files come in two formats:

* text: ASCII '0'/'1' characters, newline terminated;
* raw: an 8-byte little-endian bit count followed by the bits packed
  MSB-first into bytes (the last byte zero padded).
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .bits import as_bits, pack, to_str, unpack

BIT_FORMATS = ("text", "raw")


def read_bits(path, fmt: str = "text") -> np.ndarray:
    if fmt == "text":
        return as_bits(Path(path).read_text())
    if fmt == "raw":
        data = Path(path).read_bytes()
        if len(data) < 8:
            raise ValueError(f"{path}: raw bit file shorter than its 8-byte header")
        nbits = int.from_bytes(data[:8], "little")
        if len(data) - 8 != -(-nbits // 8):
            raise ValueError(f"{path}: header says {nbits} bits, body has {len(data) - 8} bytes")
        return unpack(data[8:], nbits)
    raise ValueError(f"unknown bit format {fmt!r}")


def write_bits(path, bits, fmt: str = "text") -> None:
    bits = as_bits(bits)
    if fmt == "text":
        Path(path).write_text(to_str(bits) + "\n")
    elif fmt == "raw":
        Path(path).write_bytes(bits.size.to_bytes(8, "little") + pack(bits))
    else:
        raise ValueError(f"unknown bit format {fmt!r}")


def dumps_records(records: list[dict], fmt: str = "json", columns=None) -> str:
    """Serialize records; CSV columns follow ``columns`` then first-seen order."""
    if fmt == "json":
        if len(records) == 1:
            return json.dumps(records[0]) + "\n"
        return "\n".join(json.dumps(r) for r in records) + "\n"
    if fmt == "csv":
        cols = list(columns or [])
        for r in records:
            cols.extend(k for k in r if k not in cols)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in cols})
        return buf.getvalue()
    raise ValueError(f"unknown record format {fmt!r}")
