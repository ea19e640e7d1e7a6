"""Table-driven arithmetic in GF(2^m), 2 <= m <= 16.

Elements are plain ints in ``[0, 2^m)``; bit ``m-1`` holds the coefficient of
``x^(m-1)``. The primitive element alpha is the polynomial ``x`` (value 2).
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bits import as_bits, bits_to_int, int_to_bits

# Primitive polynomials as (m+1)-bit masks, e.g. 0x13 = x^4 + x + 1.
DEFAULT_POLYS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class Field:
    """GF(2^m) with exp/log tables for the primitive element alpha = x.

    Construction rejects polynomials of the wrong degree and polynomials that
    are not primitive (alpha must have multiplicative order 2^m - 1).
    """

    def __init__(self, m: int, prim_poly: int | None = None):
        if not 2 <= m <= 16:
            raise ValueError(f"extension degree m={m} outside supported range [2, 16]")
        if prim_poly is None:
            prim_poly = DEFAULT_POLYS[m]
        if prim_poly.bit_length() - 1 != m:
            raise ValueError(f"polynomial {prim_poly:#x} does not have degree {m}")
        self.m = m
        self.q = 1 << m
        self.prim_poly = prim_poly
        order = self.q - 1
        # exp is doubled so that log[a] + log[b] never needs a modulo
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(order):
            if log[x] != -1:
                raise ValueError(
                    f"polynomial {prim_poly:#x} is not primitive: alpha has order {i}")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= prim_poly
        if x != 1:
            raise ValueError(f"polynomial {prim_poly:#x} is not primitive")
        exp[order:] = exp[:order]
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log

    def __repr__(self):
        return f"Field(m={self.m}, prim_poly={self.prim_poly:#x})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.m, self.prim_poly) == (other.m, other.prim_poly)

    def __hash__(self):
        return hash((self.m, self.prim_poly))

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def alpha_pow(self, i: int) -> int:
        return int(self.exp[i % (self.q - 1)])

    def dot(self, coeffs, values) -> int:
        acc = 0
        for a, b in zip(coeffs, values):
            acc ^= self.mul(int(a), int(b))
        return acc

    def power_repr(self, a: int) -> str:
        """Human-readable form: ``0``, ``1``, ``a``, ``a^11``."""
        if a == 0:
            return "0"
        e = int(self.log[a])
        return "1" if e == 0 else ("a" if e == 1 else f"a^{e}")

    def elem_from_bits(self, block) -> int:
        """MSB-first mapping of an m-bit block to a field element."""
        b = as_bits(block)
        if b.size != self.m:
            raise ValueError(f"block must have {self.m} bits, got {b.size}")
        return bits_to_int(b)

    def elem_to_bits(self, a: int) -> np.ndarray:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF(2^{self.m})")
        return int_to_bits(a, self.m)


@lru_cache(maxsize=None)
def get_field(m: int, prim_poly: int | None = None) -> Field:
    return Field(m, prim_poly)
