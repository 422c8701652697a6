"""Compiled loops over stacked bases.

A stack of subspaces is a ``(N, D, n)`` integer array.  Member ``i`` is given
by the nonzero rows of ``bases[i]`` in RREF, zero rows padded at the bottom.
Field arithmetic goes through dense ``add``/``mul``/``neg`` tables.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def check_rref(bases, ranks):
    """Fill ``ranks``; return the first member not in RREF, or -1."""
    N, D, n = bases.shape
    for i in range(N):
        prev = -1
        r = 0
        zero_seen = False
        for k in range(D):
            piv = -1
            for j in range(n):
                if bases[i, k, j] != 0:
                    piv = j
                    break
            if piv < 0:
                zero_seen = True
                continue
            if zero_seen or piv <= prev or bases[i, k, piv] != 1:
                return i
            for kk in range(D):
                if kk != k and bases[i, kk, piv] != 0:
                    return i
            prev = piv
            r += 1
        ranks[i] = r
    return -1


@njit(cache=True)
def cover_points(bases, ranks, add, mul, q, seen, theta_tab, pow_tab, target):
    """Walk the points of every member, marking them in the bit set ``seen``.

    With ``target < 0`` the walk stops at the first point already marked and
    returns ``(member, point)``; ``(-1, -1)`` means no point is covered twice.
    With ``target >= 0`` nothing is marked and the first member containing
    point ``target`` is returned as ``(member, target)``.
    """
    N, D, n = bases.shape
    acc = np.zeros((D + 1, n), dtype=np.int64)
    digits = np.zeros(D + 1, dtype=np.int64)
    for i in range(N):
        d = ranks[i]
        for lead in range(d):
            piv = 0
            while bases[i, lead, piv] == 0:
                piv += 1
            nfree = d - 1 - lead
            for j in range(n):
                acc[0, j] = bases[i, lead, j]
            for k in range(nfree):
                digits[k] = 0
                for j in range(n):
                    acc[k + 1, j] = acc[k, j]
            base_idx = theta_tab[n - 1 - piv]
            while True:
                idx = base_idx
                for j in range(piv + 1, n):
                    idx += acc[nfree, j] * pow_tab[n - 1 - j]
                if target >= 0:
                    if idx == target:
                        return i, idx
                else:
                    word = idx >> 6
                    bit = np.uint64(1) << np.uint64(idx & 63)
                    if seen[word] & bit:
                        return i, idx
                    seen[word] |= bit
                k = nfree - 1
                while k >= 0 and digits[k] == q - 1:
                    digits[k] = 0
                    k -= 1
                if k < 0:
                    break
                digits[k] += 1
                c = digits[k]
                for j in range(n):
                    acc[k + 1, j] = add[acc[k, j], mul[c, bases[i, lead + 1 + k, j]]]
                for kk in range(k + 1, nfree):
                    for j in range(n):
                        acc[kk + 1, j] = acc[kk, j]
    return -1, -1


@njit(cache=True)
def _emit_member(bases, i, d, add, mul, q, theta_tab, pow_tab, acc, digits, out, pos):
    n = bases.shape[2]
    for lead in range(d):
        piv = 0
        while bases[i, lead, piv] == 0:
            piv += 1
        nfree = d - 1 - lead
        for j in range(n):
            acc[0, j] = bases[i, lead, j]
        for k in range(nfree):
            digits[k] = 0
            for j in range(n):
                acc[k + 1, j] = acc[k, j]
        base_idx = theta_tab[n - 1 - piv]
        while True:
            idx = base_idx
            for j in range(piv + 1, n):
                idx += acc[nfree, j] * pow_tab[n - 1 - j]
            out[pos] = idx
            pos += 1
            k = nfree - 1
            while k >= 0 and digits[k] == q - 1:
                digits[k] = 0
                k -= 1
            if k < 0:
                break
            digits[k] += 1
            c = digits[k]
            for j in range(n):
                acc[k + 1, j] = add[acc[k, j], mul[c, bases[i, lead + 1 + k, j]]]
            for kk in range(k + 1, nfree):
                for j in range(n):
                    acc[kk + 1, j] = acc[kk, j]
    return pos


@njit(cache=True)
def mark_points_bucketed(bases, ranks, add, mul, q, seen, theta_tab, pow_tab, block, shift):
    """Mark every member point in ``seen``; return True if some point repeats.

    Points are produced a block at a time and counting-sorted by
    ``index >> shift`` before touching the bit set, so each pass over the
    bit set stays inside one cache-sized window.
    """
    N, D, n = bases.shape
    acc = np.zeros((D + 1, n), dtype=np.int64)
    digits = np.zeros(D + 1, dtype=np.int64)
    buf = np.empty(block, dtype=np.int64)
    srt = np.empty(block, dtype=np.int64)
    nb = ((seen.shape[0] * 64) >> shift) + 2
    starts = np.zeros(nb, dtype=np.int64)
    i = 0
    while i < N:
        pos = 0
        while i < N:
            size = theta_tab[ranks[i]]
            if pos + size > block:
                break
            pos = _emit_member(bases, i, ranks[i], add, mul, q, theta_tab, pow_tab, acc, digits, buf, pos)
            i += 1
        for b in range(nb):
            starts[b] = 0
        for k in range(pos):
            starts[(buf[k] >> shift) + 1] += 1
        for b in range(1, nb):
            starts[b] += starts[b - 1]
        for k in range(pos):
            b = buf[k] >> shift
            srt[starts[b]] = buf[k]
            starts[b] += 1
        for k in range(pos):
            idx = srt[k]
            word = idx >> 6
            bit = np.uint64(1) << np.uint64(idx & 63)
            if seen[word] & bit:
                return True
            seen[word] |= bit
    return False


@njit(cache=True)
def unset_bits(seen, npts):
    """Indices below ``npts`` whose bit is clear."""
    count = 0
    for i in range(npts):
        if not (seen[i >> 6] >> np.uint64(i & 63)) & np.uint64(1):
            count += 1
    out = np.empty(count, dtype=np.int64)
    count = 0
    for i in range(npts):
        if not (seen[i >> 6] >> np.uint64(i & 63)) & np.uint64(1):
            out[count] = i
            count += 1
    return out


@njit(cache=True)
def fill_graph_members(out, start, offset, t, m, q, modulus, add, mul, neg):
    """Write the subspaces {(x, a*x) : x in span(1, z, ..., z^(t-1))}.

    ``a`` runs over F_{q^m} in integer order; the x-part occupies columns
    ``offset .. offset+t-1`` and the F_{q^m} coefficients (c_0 first) the next
    ``m`` columns.  Row i of member a is (e_i, a * z^i).
    """
    row = np.zeros(m, dtype=np.int64)
    cur = np.zeros(m, dtype=np.int64)
    total = q**m
    for a in range(total):
        if a > 0:
            j = 0
            while cur[j] == q - 1:
                cur[j] = 0
                j += 1
            cur[j] += 1
        for j in range(m):
            row[j] = cur[j]
        idx = start + a
        for i in range(t):
            out[idx, i, offset + i] = 1
            for j in range(m):
                out[idx, i, offset + t + j] = row[j]
            top = row[m - 1]
            for j in range(m - 1, 0, -1):
                nxt = row[j - 1]
                if top != 0:
                    nxt = add[nxt, neg[mul[top, modulus[j]]]]
                row[j] = nxt
            row[0] = neg[mul[top, modulus[0]]] if top != 0 else 0
