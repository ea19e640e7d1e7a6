"""Independent slow reference implementations used to check the library.

Nothing here imports the package's arithmetic: field products are done by
shift-and-add with explicit reduction, linear algebra by brute force over
tiny fields, deletion decoding by enumerating every message.
"""
from __future__ import annotations

from itertools import combinations, product


def clmul_mod(a: int, b: int, m: int, poly: int) -> int:
    """Product in GF(2)[x]/(poly) by shift-and-add."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return r


def gf_inv_bruteforce(a: int, m: int, poly: int) -> int:
    for b in range(1, 1 << m):
        if clmul_mod(a, b, m, poly) == 1:
            return b
    raise ZeroDivisionError


def is_primitive(poly: int, m: int) -> bool:
    """x generates the multiplicative group mod poly."""
    order = (1 << m) - 1
    v, seen = 1, set()
    for _ in range(order):
        v = clmul_mod(v, 2, m, poly)
        seen.add(v)
    return len(seen) == order and 0 not in seen


def det_gf(M, m: int, poly: int) -> int:
    """Determinant by Laplace expansion (characteristic 2, so no signs)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total ^= clmul_mod(M[0][j], det_gf(minor, m, poly), m, poly)
    return total


def bits_of(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def delete_positions(bits, positions0):
    drop = set(positions0)
    return [b for i, b in enumerate(bits) if i not in drop]


def all_single_deletions(x):
    return {tuple(x[:i] + x[i + 1:]) for i in range(len(x))}


def vt_insertions(y, s: int, L: int):
    """Every length-L string with VT syndrome s obtained by inserting one bit into y."""
    out = set()
    for pos in range(len(y) + 1):
        for b in (0, 1):
            x = list(y[:pos]) + [b] + list(y[pos:])
            if sum((i + 1) * v for i, v in enumerate(x)) % (L + 1) == s:
                out.add(tuple(x))
    return out


def is_subseq(s, t) -> bool:
    it = iter(t)
    return all(any(b == c for c in it) for b in s)


def lcs_len(s, t) -> int:
    """Textbook dynamic program; s is a subsequence of t iff this equals len(s)."""
    prev = [0] * (len(t) + 1)
    for a in s:
        cur = [0]
        for j, b in enumerate(t):
            cur.append(prev[j] + 1 if a == b else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def consistent_messages(y, k: int, encode, deletions: int):
    """All k-bit messages whose codeword can produce y with that many deletions."""
    out = []
    for u in product((0, 1), repeat=k):
        x = list(encode(list(u)))
        if len(x) - len(y) == deletions and is_subseq(y, x):
            out.append(u)
    return out


def patterns(n: int, d: int):
    return combinations(range(n), d)
