"""Compiled inner loops: state ranking, gradings over all states, empty
rectangle enumeration and GF(2) column reduction.

States are indexed by their lexicographic rank, so state ``i`` is the
``i``-th tuple produced by ``itertools.permutations(range(n))``.
"""

import numpy as np
from numba import njit, prange
from numba.typed import List

MAX_N = 12  # 12! still fits an int32 index


@njit(cache=True)
def factorials(n):
    f = np.ones(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        f[i] = f[i - 1] * i
    return f


@njit(cache=True)
def unrank(idx, n, fact, perm, avail):
    for i in range(n):
        avail[i] = True
    for i in range(n):
        f = fact[n - 1 - i]
        q = idx // f
        idx = idx - q * f
        cnt = -1
        for v in range(n):
            if avail[v]:
                cnt += 1
                if cnt == q:
                    perm[i] = v
                    avail[v] = False
                    break


@njit(cache=True)
def rank(perm, n, fact):
    r = 0
    for i in range(n):
        less = 0
        pi = perm[i]
        for j in range(i + 1, n):
            if perm[j] < pi:
                less += 1
        r += less * fact[n - 1 - i]
    return r


@njit(cache=True, parallel=True)
def all_gradings(n, cut_row, cut_col, f_table, g_table, const):
    """Per state: ``M = I(x, x) + const - sum f[c, perm[c]]`` and
    ``A2 = sum g[c, perm[c]]`` where ``I(x, x)`` is taken in the planar
    realization cut at (cut_row, cut_col)."""
    fact = factorials(n)
    total = fact[n]
    m_out = np.empty(total, dtype=np.int64)
    a_out = np.empty(total, dtype=np.int64)
    nchunks = min(total, 256)
    step = (total + nchunks - 1) // nchunks
    for ch in prange(nchunks):
        perm = np.empty(n, dtype=np.int64)
        avail = np.empty(n, dtype=np.bool_)
        px = np.empty(n, dtype=np.int64)
        py = np.empty(n, dtype=np.int64)
        lo = ch * step
        hi = min(total, lo + step)
        for s in range(lo, hi):
            unrank(s, n, fact, perm, avail)
            fsum = 0
            gsum = 0
            for c in range(n):
                px[c] = (c - cut_col) % n
                py[c] = (perm[c] - cut_row) % n
                fsum += f_table[c, perm[c]]
                gsum += g_table[c, perm[c]]
            inv = 0
            for i in range(n):
                for j in range(n):
                    if px[i] < px[j] and py[i] < py[j]:
                        inv += 1
            m_out[s] = inv + const - fsum
            a_out[s] = gsum
    return m_out, a_out


@njit(cache=True)
def _rect_ok(perm, n, a, b, blocked):
    """Rectangle with lower-left corner on column a and upper-right corner on
    column b (both state points of ``perm``): marking-free and empty?"""
    w = (b - a) % n
    r1 = perm[a]
    h = (perm[b] - r1) % n
    if blocked[a, w, r1, h]:
        return False
    for k in range(1, w):
        cc = (a + k) % n
        dr = (perm[cc] - r1) % n
        if dr > 0 and dr < h:
            return False
    return True


@njit(cache=True)
def _scan_state(s, n, fact, perm, avail, blocked, out_dst, pos):
    """Count (pos < 0) or write the targets of ``s``; returns the count."""
    unrank(s, n, fact, perm, avail)
    cnt = 0
    for a in range(n):
        for b in range(a + 1, n):
            k = 0
            if _rect_ok(perm, n, a, b, blocked):
                k += 1
            if _rect_ok(perm, n, b, a, blocked):
                k += 1
            if k == 1:
                if pos >= 0:
                    t = perm[a]
                    perm[a] = perm[b]
                    perm[b] = t
                    out_dst[pos + cnt] = rank(perm, n, fact)
                    perm[b] = perm[a]
                    perm[a] = t
                cnt += 1
    return cnt


@njit(cache=True, parallel=True)
def rectangle_edges(n, blocked):
    """Boundary entries ``(src, dst)`` over GF(2): one entry per pair of states
    joined by an odd number of empty rectangles avoiding ``blocked`` regions.
    ``blocked[c, w, r, h]`` is true when the rectangle spanning columns
    ``c .. c+w-1`` and rows ``r .. r+h-1`` (mod n) contains a forbidden marking.
    Output is sorted by source state, deterministic for any thread count."""
    fact = factorials(n)
    total = fact[n]
    counts = np.zeros(total, dtype=np.int64)
    nchunks = min(total, 1024)
    step = (total + nchunks - 1) // nchunks
    dummy = np.empty(0, dtype=np.int32)
    for ch in prange(nchunks):
        perm = np.empty(n, dtype=np.int64)
        avail = np.empty(n, dtype=np.bool_)
        lo = ch * step
        hi = min(total, lo + step)
        for s in range(lo, hi):
            counts[s] = _scan_state(s, n, fact, perm, avail, blocked, dummy, -1)
    offsets = np.empty(total + 1, dtype=np.int64)
    offsets[0] = 0
    for s in range(total):
        offsets[s + 1] = offsets[s] + counts[s]
    nnz = offsets[total]
    src = np.empty(nnz, dtype=np.int32)
    dst = np.empty(nnz, dtype=np.int32)
    for ch in prange(nchunks):
        perm = np.empty(n, dtype=np.int64)
        avail = np.empty(n, dtype=np.bool_)
        lo = ch * step
        hi = min(total, lo + step)
        for s in range(lo, hi):
            o = offsets[s]
            _scan_state(s, n, fact, perm, avail, blocked, dst, o)
            for k in range(o, offsets[s + 1]):
                src[k] = s
    return src, dst


@njit(cache=True)
def _xor_sorted(a, b):
    out = np.empty(a.size + b.size, dtype=a.dtype)
    i = 0
    j = 0
    k = 0
    while i < a.size and j < b.size:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < a.size:
        out[k] = a[i]
        i += 1
        k += 1
    while j < b.size:
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k].copy()


@njit(cache=True)
def reduce_columns(indptr, indices, ncols, use_clearing):
    """Standard GF(2) column reduction (pivot = largest row index).

    Columns are processed in index order.  With ``use_clearing`` a column
    that already occurred as the pivot of an earlier column is skipped: for a
    boundary matrix processed from high to low homological degree such a
    column is known to reduce to zero.  Returns a boolean mask of the columns
    that survive reduction; their count is the rank.
    """
    nrows = ncols
    pivot_owner = np.full(nrows, -1, dtype=np.int64)
    slot = np.full(ncols, -1, dtype=np.int64)
    cleared = np.zeros(ncols, dtype=np.bool_)
    nonzero = np.zeros(ncols, dtype=np.bool_)
    store = List()
    store.append(np.empty(0, dtype=indices.dtype))
    for j in range(ncols):
        if use_clearing and cleared[j]:
            continue
        lo = indptr[j]
        hi = indptr[j + 1]
        if lo == hi:
            continue
        col = indices[lo:hi].copy()
        while col.size > 0:
            p = pivot_owner[col[col.size - 1]]
            if p < 0:
                break
            col = _xor_sorted(col, store[slot[p]])
        if col.size > 0:
            low = col[col.size - 1]
            pivot_owner[low] = j
            slot[j] = len(store)
            store.append(col)
            nonzero[j] = True
            cleared[low] = True
    return nonzero


@njit(cache=True)
def boundary_squared_is_zero(indptr, indices, ncols):
    parity = np.zeros(ncols, dtype=np.uint8)
    stamp = np.full(ncols, -1, dtype=np.int64)
    buf = np.empty(ncols, dtype=np.int64)
    for j in range(ncols):
        nb = 0
        for p in range(indptr[j], indptr[j + 1]):
            i = indices[p]
            for q in range(indptr[i], indptr[i + 1]):
                k = indices[q]
                if stamp[k] != j:
                    stamp[k] = j
                    parity[k] = 0
                    buf[nb] = k
                    nb += 1
                parity[k] ^= 1
        for t in range(nb):
            if parity[buf[t]]:
                return False
    return True
