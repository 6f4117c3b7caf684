"""Compiled kernels for large blocks of the Nichols engine.

Field products use log/exp tables: ``exp[log[a] + log[b]]`` for nonzero a, b.
Imported lazily; numba costs about a second to load.
"""

from __future__ import annotations

import functools

import numba as nb
import numpy as np

from .field import FieldSpec


@functools.lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    if spec._tables is not None:
        log, exp = spec._tables
        return np.asarray(log, dtype=np.int64), np.asarray(exp, dtype=np.uint32)
    from .linalg import _big_tables
    log, exp = _big_tables(spec)
    return np.asarray(log, dtype=np.int64), np.asarray(exp, dtype=np.uint32)


def dense_dtype(spec: FieldSpec):
    return np.uint8 if spec.k <= 8 else np.uint16 if spec.k <= 16 else np.uint32


@nb.njit(cache=True)
def spgemm(nrows, a_ptr, a_idx, a_dat, b_ptr, b_idx, b_dat, log, exp):
    """CSC product A @ B."""
    ncols = len(b_ptr) - 1
    acc = np.zeros(nrows, np.uint32)
    mark = np.full(nrows, -1, np.int64)
    touched = np.empty(nrows, np.int64)
    cap = max(16, 2 * (len(a_idx) + len(b_idx)))
    idx = np.empty(cap, np.int64)
    dat = np.empty(cap, np.uint32)
    ptr = np.zeros(ncols + 1, np.int64)
    nnz = 0
    for j in range(ncols):
        t = 0
        for p in range(b_ptr[j], b_ptr[j + 1]):
            lv = log[b_dat[p]]
            r = b_idx[p]
            for q in range(a_ptr[r], a_ptr[r + 1]):
                row = a_idx[q]
                w = exp[lv + log[a_dat[q]]]
                if mark[row] != j:
                    mark[row] = j
                    acc[row] = w
                    touched[t] = row
                    t += 1
                else:
                    acc[row] ^= w
        rows = np.sort(touched[:t])
        if nnz + t > cap:
            cap = 2 * (nnz + t)
            idx2 = np.empty(cap, np.int64)
            dat2 = np.empty(cap, np.uint32)
            idx2[:nnz] = idx[:nnz]
            dat2[:nnz] = dat[:nnz]
            idx = idx2
            dat = dat2
        for row in rows:
            if acc[row] != 0:
                idx[nnz] = row
                dat[nnz] = acc[row]
                nnz += 1
        ptr[j + 1] = nnz
    return ptr, idx[:nnz].copy(), dat[:nnz].copy()


@nb.njit(cache=True)
def scatter(F, ptr, idx, dat, s, row_off, colmap, log, exp):
    """F[row_off + i, colmap[j]] ^= s * Q[i, j], skipping negative colmap entries."""
    ls = log[s]
    for j in range(len(ptr) - 1):
        c = colmap[j]
        if c < 0:
            continue
        for p in range(ptr[j], ptr[j + 1]):
            r = row_off + idx[p]
            F[r, c] = F[r, c] ^ exp[ls + log[dat[p]]]


@nb.njit(cache=True)
def rref(F, log, exp):
    """In-place Gauss-Jordan; returns (pivot columns, pivot rows) in pivot order.

    The pivot row for column c is the first unused row with a nonzero entry;
    any choice yields the same reduced form.  F should be column-major: the
    pivot search scans columns, and row updates only touch the (few) nonzero
    positions of the pivot row.
    """
    L, m = F.shape
    order = len(exp) // 2
    used = np.zeros(L, np.bool_)
    piv = np.empty(min(L, m), np.int64)
    prow = np.empty(min(L, m), np.int64)
    hits = np.empty(L, np.int64)
    nzp = np.empty(m, np.int64)
    r = 0
    for c in range(m):
        if r == L:
            break
        p = -1
        h = 0
        for i in range(L):
            if F[i, c] != 0:
                if p < 0 and not used[i]:
                    p = i
                else:
                    hits[h] = i
                    h += 1
        if p < 0:
            continue
        lead = F[p, c]
        li = (order - log[lead]) % order
        nn = 0
        for x in range(c, m):
            v = F[p, x]
            if v != 0:
                if lead != 1:
                    F[p, x] = exp[log[v] + li]
                nzp[nn] = x
                nn += 1
        for t in range(h):
            s = hits[t]
            lf = log[F[s, c]]
            for u in range(nn):
                x = nzp[u]
                F[s, x] = F[s, x] ^ exp[lf + log[F[p, x]]]
        used[p] = True
        piv[r] = c
        prow[r] = p
        r += 1
    return piv[:r].copy(), prow[:r].copy()


@nb.njit(cache=True)
def extract_csc(F, rows, cols):
    """CSC arrays of the submatrix F[rows][:, cols]."""
    ptr = np.zeros(len(cols) + 1, np.int64)
    for j in range(len(cols)):
        c = cols[j]
        cnt = 0
        for t in range(len(rows)):
            if F[rows[t], c] != 0:
                cnt += 1
        ptr[j + 1] = ptr[j] + cnt
    idx = np.empty(ptr[-1], np.int64)
    dat = np.empty(ptr[-1], np.uint32)
    q = 0
    for j in range(len(cols)):
        c = cols[j]
        for t in range(len(rows)):
            v = F[rows[t], c]
            if v != 0:
                idx[q] = t
                dat[q] = v
                q += 1
    return ptr, idx, dat
