"""Sparse vectors over GF(2^k) as ``{index: mask}`` dicts, and sparse RREF."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import FieldSpec

SparseVec = dict[int, int]


def axpy(y: SparseVec, s: int, x: SparseVec, mul) -> None:
    """y += s * x in place."""
    if s == 1:
        for i, v in x.items():
            nv = y.get(i, 0) ^ v
            if nv:
                y[i] = nv
            else:
                del y[i]
        return
    for i, v in x.items():
        nv = y.get(i, 0) ^ mul(s, v)
        if nv:
            y[i] = nv
        else:
            del y[i]


def scale(x: SparseVec, s: int, mul) -> SparseVec:
    if s == 1:
        return dict(x)
    if s == 0:
        return {}
    return {i: mul(s, v) for i, v in x.items()}


def apply_columns(cols: Sequence[SparseVec], x: SparseVec, mul) -> SparseVec:
    """Matrix (given by sparse columns) times sparse vector."""
    out: SparseVec = {}
    for r, v in x.items():
        axpy(out, v, cols[r], mul)
    return out


def rref_columns(cols: Sequence[SparseVec], spec: FieldSpec) -> tuple[list[int], list[SparseVec]]:
    """Column rank profile of the matrix whose c-th column is ``cols[c]``.

    Returns the pivot columns in increasing order and, for every column, its
    coordinates with respect to the pivot columns (``{pivot rank: coeff}``).
    These are exactly the pivot list and the columns of the reduced row
    echelon form; pivot rows are chosen sparsest-first, which does not change
    the (unique) result.
    """
    mul = spec.mul
    rows: dict[int, SparseVec] = {}
    colidx: dict[int, set[int]] = {}
    for c, col in enumerate(cols):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colidx.setdefault(c, set()).add(r)
    unused = set(rows)
    pivots: list[int] = []
    prow: list[int] = []
    for c in range(len(cols)):
        hits = colidx.get(c)
        if not hits:
            continue
        cand = [r for r in hits if r in unused]
        if not cand:
            continue
        p = min(cand, key=lambda r: (len(rows[r]), r))
        rowp = rows[p]
        lead = rowp[c]
        if lead != 1:
            inv = spec.inv(lead)
            rowp = {cc: mul(v, inv) for cc, v in rowp.items()}
            rows[p] = rowp
        for s in list(hits):
            if s == p:
                continue
            rs = rows[s]
            f = rs[c]
            for cc, v in rowp.items():
                nv = rs.get(cc, 0) ^ (v if f == 1 else mul(f, v))
                if nv:
                    if cc not in rs:
                        colidx.setdefault(cc, set()).add(s)
                    rs[cc] = nv
                else:
                    del rs[cc]
                    colidx[cc].discard(s)
        unused.discard(p)
        pivots.append(c)
        prow.append(p)
    coords: list[SparseVec] = [{} for _ in cols]
    for rank, p in enumerate(prow):
        for c, v in rows[p].items():
            coords[c][rank] = v
    return pivots, coords


class CSC:
    """Compressed sparse columns over GF(2^k) (masks in ``data``)."""

    __slots__ = ("nrows", "ncols", "indptr", "indices", "data", "_cols")

    def __init__(self, nrows: int, ncols: int, indptr, indices, data):
        self.nrows = nrows
        self.ncols = ncols
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = np.asarray(data, dtype=np.uint32)
        self._cols = None

    @classmethod
    def from_columns(cls, cols: Sequence[SparseVec], nrows: int) -> "CSC":
        ptr = [0]
        idx: list[int] = []
        dat: list[int] = []
        for col in cols:
            for r in sorted(col):
                idx.append(r)
                dat.append(col[r])
            ptr.append(len(idx))
        return cls(nrows, len(cols), ptr, idx, dat)

    @classmethod
    def from_dense(cls, A: np.ndarray) -> "CSC":
        nrows, ncols = A.shape
        cols, rows = np.nonzero(A.T)
        ptr = np.zeros(ncols + 1, dtype=np.int64)
        np.cumsum(np.bincount(cols, minlength=ncols), out=ptr[1:])
        return cls(nrows, ncols, ptr, rows, A[rows, cols])

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def __bool__(self):
        return self.nnz > 0

    def columns(self) -> list[SparseVec]:
        if self._cols is None:
            ptr = self.indptr.tolist()
            idx = self.indices.tolist()
            dat = self.data.tolist()
            self._cols = [dict(zip(idx[ptr[j]:ptr[j + 1]], dat[ptr[j]:ptr[j + 1]])) for j in range(self.ncols)]
        return self._cols

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint32)
        cols = np.repeat(np.arange(self.ncols), np.diff(self.indptr))
        out[self.indices, cols] = self.data
        return out
