"""Compiled hypothesis sweep for the guess-and-check decoder.

The sweep walks every way of distributing ``D`` systematic deletions over the
``K`` blocks as a nondecreasing tuple ``j_1 <= ... <= j_D`` of block indices
(a weak composition written as a multiset). For each tuple the erased blocks
are solved from the first ``e`` parities and the candidate is checked against
the remaining parities and the supersequence criterion.

Two observations keep this fast:

* A block left intact contributes ``G[r][j] * S`` to parity ``r`` where ``S``
  depends only on the block and on how many deletions precede it. Prefix XORs
  of those contributions (``PX``) give the residual of any hypothesis in
  O(D * c).
* With the first ``D-1`` indices fixed, consistency of one extra parity row
  is a scalar equation in the last index. It is evaluated with a left null
  basis of the outer erased columns and running prefix sums, so almost every
  hypothesis is rejected after a few table lookups. Survivors go through the
  full check, which decides the verdict on its own; the prefilter never
  rejects a hypothesis the full check would accept.

Field elements use branchless tables: ``LOG[0]`` is a sentinel whose sums
index the zero tail of ``EXP``.
"""
from __future__ import annotations

import numpy as np
from numba import njit


def field_tables(field):
    """Extended (EXP, LOG, order) tables for the kernel."""
    order = field.q - 1
    zero = 2 * order
    exp = np.zeros(4 * order + 1, dtype=np.int64)
    exp[:2 * order] = np.asarray(field.exp[:2 * order])
    log = np.asarray(field.log, dtype=np.int64).copy()
    log[0] = zero
    return exp, log, order


@njit(cache=True)
def _symbol(y, start, length):
    v = 0
    for i in range(length):
        v = (v << 1) | y[start + i]
    return v


@njit(cache=True)
def _fill_is_superseq(y, start, sublen, value, length):
    # y[start:start+sublen] must be a subsequence of the length-bit MSB-first fill
    i = 0
    for t in range(length):
        if i == sublen:
            break
        bit = (value >> (length - 1 - t)) & 1
        if bit == y[start + i]:
            i += 1
    return i == sublen


@njit(cache=True)
def _solve(A, b, e, EXP, LOG, order):
    for col in range(e):
        piv = -1
        for r in range(col, e):
            if A[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for t in range(e):
                tmp = A[col, t]
                A[col, t] = A[piv, t]
                A[piv, t] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        inv = EXP[order - LOG[A[col, col]]]
        for t in range(col, e):
            A[col, t] = EXP[LOG[inv] + LOG[A[col, t]]]
        b[col] = EXP[LOG[inv] + LOG[b[col]]]
        for r in range(e):
            if r != col and A[r, col] != 0:
                f = A[r, col]
                for t in range(col, e):
                    A[r, t] ^= EXP[LOG[f] + LOG[A[col, t]]]
                b[r] ^= EXP[LOG[f] + LOG[b[col]]]
    return True


@njit(cache=True)
def _full_check(tup, D, y, block_start, block_len, G, par, n_par, PX, S,
                EXP, LOG, order, cands, state):
    """Decode one hypothesis and record it if possible.

    ``state`` holds [n_possible, n_distinct].
    """
    K = block_start.size
    # distinct erased blocks with counts and the number of deletions before each
    E = np.empty(D, dtype=np.int64)
    cnt = np.empty(D, dtype=np.int64)
    before = np.empty(D, dtype=np.int64)
    e = 0
    for i in range(D):
        if e > 0 and E[e - 1] == tup[i]:
            cnt[e - 1] += 1
        else:
            E[e] = tup[i]
            cnt[e] = 1
            e += 1
    s = 0
    for i in range(e):
        before[i] = s
        s += cnt[i]
        if cnt[i] > block_len[E[i]]:
            return
    if e > n_par:
        return
    R = par[:n_par].copy()
    prev = -1
    s = 0
    for i in range(e):
        for r in range(n_par):
            R[r] ^= PX[s, r, E[i]] ^ PX[s, r, prev + 1]
        s += cnt[i]
        prev = E[i]
    for r in range(n_par):
        R[r] ^= PX[s, r, K] ^ PX[s, r, prev + 1]
    X = np.zeros(max(e, 1), dtype=np.int64)
    if e > 0:
        A = np.empty((e, e), dtype=np.int64)
        b = np.empty(e, dtype=np.int64)
        for r in range(e):
            for i in range(e):
                A[r, i] = G[r, E[i]]
            b[r] = R[r]
        if not _solve(A, b, e, EXP, LOG, order):
            return
        for i in range(e):
            X[i] = b[i]
    # Criterion 1: every parity not used for solving must hold
    for r in range(e, n_par):
        acc = 0
        for i in range(e):
            acc ^= EXP[LOG[G[r, E[i]]] + LOG[X[i]]]
        if acc != R[r]:
            return
    # Criterion 2: each fill is a valid block and a supersequence of its sub-block
    for i in range(e):
        length = block_len[E[i]]
        if X[i] >> length:
            return
        start = block_start[E[i]] - before[i]
        if not _fill_is_superseq(y, start, length - cnt[i], X[i], length):
            return
    state[0] += 1
    cand = np.empty(K, dtype=np.int64)
    i = 0
    shift = 0
    for j in range(K):
        if i < e and E[i] == j:
            cand[j] = X[i]
            shift += cnt[i]
            i += 1
        else:
            cand[j] = S[shift, j]
    nd = state[1]
    stored = min(nd, cands.shape[0])
    for c in range(stored):
        same = True
        for j in range(K):
            if cands[c, j] != cand[j]:
                same = False
                break
        if same:
            return
    if nd < cands.shape[0]:
        cands[nd, :] = cand
    state[1] = nd + 1


@njit(cache=True)
def _null_basis(G, E, e, n1, n2, EXP, LOG, order):
    # rows of MT are the erased columns restricted to parity rows 0..e+1
    h = e + 2
    MT = np.empty((e, h), dtype=np.int64)
    for i in range(e):
        for r in range(h):
            MT[i, r] = G[r, E[i]]
    for col in range(e):
        piv = -1
        for r in range(col, e):
            if MT[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for t in range(h):
                tmp = MT[col, t]
                MT[col, t] = MT[piv, t]
                MT[piv, t] = tmp
        inv = EXP[order - LOG[MT[col, col]]]
        for t in range(h):
            MT[col, t] = EXP[LOG[inv] + LOG[MT[col, t]]]
        for r in range(e):
            if r != col and MT[r, col] != 0:
                f = MT[r, col]
                for t in range(h):
                    MT[r, t] ^= EXP[LOG[f] + LOG[MT[col, t]]]
    for i in range(e):
        n1[i] = MT[i, e]
        n2[i] = MT[i, e + 1]
    n1[e] = 1
    n1[e + 1] = 0
    n2[e] = 0
    n2[e + 1] = 1
    return True


@njit(cache=True)
def _dot_col(n, h, M, s, j, EXP, LOG):
    acc = 0
    for r in range(h):
        acc ^= EXP[LOG[n[r]] + LOG[M[s, r, j]]]
    return acc


@njit(cache=True)
def decode_sweep(y, d_lo, d_hi, block_start, block_len, G, par, n_par,
                 EXP, LOG, order, cands):
    """Run every hypothesis with d_lo <= D <= d_hi systematic deletions.

    The systematic part for split D is ``y[:k - D]``. Returns
    ``(n_possible, n_distinct, examined)`` where ``examined[D]`` counts the
    hypotheses visited for that split and the first ``min(n_distinct,
    len(cands))`` distinct candidates are written to ``cands``.
    """
    K = block_start.size
    ylen = y.size
    S = np.zeros((d_hi + 1, K), dtype=np.int64)
    for s in range(d_hi + 1):
        for j in range(K):
            st = block_start[j] - s
            if st >= 0 and st + block_len[j] <= ylen:
                S[s, j] = _symbol(y, st, block_len[j])
    PX = np.zeros((d_hi + 1, max(n_par, 1), K + 1), dtype=np.int64)
    for s in range(d_hi + 1):
        for r in range(n_par):
            acc = 0
            for j in range(K):
                acc ^= EXP[LOG[G[r, j]] + LOG[S[s, j]]]
                PX[s, r, j + 1] = acc
    state = np.zeros(2, dtype=np.int64)
    examined = np.zeros(d_hi + 1, dtype=np.int64)
    tup = np.zeros(max(d_hi, 1), dtype=np.int64)
    Eo = np.zeros(max(d_hi, 1), dtype=np.int64)
    n1 = np.zeros(d_hi + 2, dtype=np.int64)
    n2 = np.zeros(d_hi + 2, dtype=np.int64)
    Rb = np.zeros(max(n_par, 1), dtype=np.int64)

    for D in range(d_lo, d_hi + 1):
        if D == 0:
            examined[0] += 1
            _full_check(tup, 0, y, block_start, block_len, G, par, n_par, PX, S,
                        EXP, LOG, order, cands, state)
            continue
        m = D - 1
        idx = np.zeros(max(m, 1), dtype=np.int64)
        while True:
            # outer erased multiset idx[0..m-1]
            eo = 0
            valid = True
            run = 0
            for i in range(m):
                if eo > 0 and Eo[eo - 1] == idx[i]:
                    run += 1
                else:
                    Eo[eo] = idx[i]
                    eo += 1
                    run = 1
                if run > block_len[idx[i]]:
                    valid = False
            last = idx[m - 1] if m > 0 else -1
            jstart = last if m > 0 else 0
            examined[D] += K - jstart
            if valid:
                for r in range(n_par):
                    Rb[r] = par[r]
                prev = -1
                s = 0
                i = 0
                while i < m:
                    blk = idx[i]
                    c = 0
                    while i < m and idx[i] == blk:
                        c += 1
                        i += 1
                    for r in range(n_par):
                        Rb[r] ^= PX[s, r, blk] ^ PX[s, r, prev + 1]
                    s += c
                    prev = blk
                for t in range(m):
                    tup[t] = idx[t]
                if m > 0:
                    tup[m] = last
                    _full_check(tup, D, y, block_start, block_len, G, par, n_par, PX, S,
                                EXP, LOG, order, cands, state)
                j0 = last + 1
                if eo + 1 <= n_par:
                    h = eo + 2
                    use_filter = h <= n_par
                    if use_filter:
                        use_filter = _null_basis(G, Eo, eo, n1, n2, EXP, LOG, order)
                    if use_filter:
                        # constant part of the residual, projected on n1 and n2
                        C1 = 0
                        C2 = 0
                        for r in range(h):
                            base = Rb[r] ^ PX[m, r, j0] ^ PX[D, r, K]
                            C1 ^= EXP[LOG[n1[r]] + LOG[base]]
                            C2 ^= EXP[LOG[n2[r]] + LOG[base]]
                        V1 = _dot_col(n1, h, PX, m, j0, EXP, LOG)
                        V2 = _dot_col(n2, h, PX, m, j0, EXP, LOG)
                        U1 = _dot_col(n1, h, PX, D, j0, EXP, LOG)
                        U2 = _dot_col(n2, h, PX, D, j0, EXP, LOG)
                        for j in range(j0, K):
                            a = 0
                            b = 0
                            for r in range(h):
                                a ^= EXP[LOG[n1[r]] + LOG[G[r, j]]]
                                b ^= EXP[LOG[n2[r]] + LOG[G[r, j]]]
                            T1 = U1 ^ EXP[LOG[a] + LOG[S[D, j]]]
                            T2 = U2 ^ EXP[LOG[b] + LOG[S[D, j]]]
                            w1 = C1 ^ V1 ^ T1
                            w2 = C2 ^ V2 ^ T2
                            if EXP[LOG[b] + LOG[w1]] == EXP[LOG[a] + LOG[w2]]:
                                tup[m] = j
                                _full_check(tup, D, y, block_start, block_len, G, par,
                                            n_par, PX, S, EXP, LOG, order, cands, state)
                            V1 ^= EXP[LOG[a] + LOG[S[m, j]]]
                            V2 ^= EXP[LOG[b] + LOG[S[m, j]]]
                            U1 = T1
                            U2 = T2
                    else:
                        for j in range(j0, K):
                            tup[m] = j
                            _full_check(tup, D, y, block_start, block_len, G, par, n_par,
                                        PX, S, EXP, LOG, order, cands, state)
            # next nondecreasing outer tuple
            if m == 0:
                break
            p = m - 1
            while p >= 0 and idx[p] == K - 1:
                p -= 1
            if p < 0:
                break
            idx[p] += 1
            for t in range(p + 1, m):
                idx[t] = idx[p]
    return state[0], state[1], examined
