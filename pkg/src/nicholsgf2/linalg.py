"""Dense numpy linear algebra over GF(2^k).

Matrices hold element masks as unsigned integers.  Elementwise products go
through a full multiplication table for k <= 8 and log/exp tables above
that; matrix products are assembled from GF(2) bit-plane products (k^2 BLAS
calls) followed by polynomial reduction.
"""

from __future__ import annotations

import functools

import numpy as np

from .field import FieldSpec

DTYPE = np.uint32


class GFOps:
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.k = spec.k
        n = spec.size
        inv = np.zeros(n, dtype=DTYPE)
        for a in range(1, n):
            inv[a] = spec.inv(a)
        self.inv_table = inv
        self.table = None
        self.log = self.exp = None
        if self.k == 1:
            pass
        elif self.k <= 8:
            t = np.zeros((n, n), dtype=DTYPE)
            for a in range(1, n):
                for b in range(a, n):
                    t[a, b] = t[b, a] = spec.mul(a, b)
            self.table = t
        else:
            log, exp = spec._tables if spec._tables is not None else _big_tables(spec)
            self.log = np.asarray(log, dtype=np.int64)
            self.exp = np.asarray(exp, dtype=DTYPE)

    def mul(self, a, b):
        """Elementwise product with broadcasting."""
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        if self.k == 1:
            return a & b
        if self.table is not None:
            return self.table[a, b]
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), DTYPE(0), out).astype(DTYPE)

    def scale(self, s: int, a):
        if s == 1:
            return np.asarray(a, dtype=DTYPE)
        return self.mul(np.asarray(a, dtype=DTYPE), DTYPE(s))

    def matmul(self, A, B):
        A = np.asarray(A, dtype=DTYPE)
        B = np.asarray(B, dtype=DTYPE)
        if A.shape[-1] == 0 or A.shape[0] == 0 or B.shape[-1] == 0:
            return np.zeros((A.shape[0], B.shape[-1]), dtype=DTYPE)
        k = self.k
        # float64 is exact for sums of fewer than 2^53 ones
        Ap = [((A >> s) & 1).astype(np.float64) for s in range(k)]
        Bp = [((B >> s) & 1).astype(np.float64) for s in range(k)]
        acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
        for s in range(k):
            if not Ap[s].any():
                continue
            for t in range(k):
                plane = (Ap[s] @ Bp[t]).astype(np.int64) & 1
                acc ^= plane.astype(np.uint64) << np.uint64(s + t)
        return self.reduce(acc)

    def reduce(self, X):
        """Reduce polynomial masks of degree < 2k-1 modulo the field modulus."""
        k = self.k
        X = np.asarray(X, dtype=np.uint64)
        mod = np.uint64(self.spec.modulus)
        for u in range(2 * k - 2, k - 1, -1):
            bit = (X >> np.uint64(u)) & np.uint64(1)
            X = X ^ (bit * (mod << np.uint64(u - k)))
        return X.astype(DTYPE)

    def matvec(self, A, v):
        A = np.asarray(A, dtype=DTYPE)
        if A.shape[1] == 0:
            return np.zeros(A.shape[0], dtype=DTYPE)
        if A.size > 1 << 16:
            return self.matmul(A, np.asarray(v, dtype=DTYPE).reshape(-1, 1)).reshape(-1)
        return np.bitwise_xor.reduce(self.mul(A, np.asarray(v, dtype=DTYPE)[None, :]), axis=1)

    def rref(self, X):
        """Reduced row echelon form.

        Returns ``(R, pivots)`` where ``pivots`` are the pivot column indices
        in increasing order; the first ``len(pivots)`` rows of R are nonzero.
        """
        R = np.array(X, dtype=DTYPE, copy=True)
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            p = r + nz[0]
            if p != r:
                R[[r, p], c:] = R[[p, r], c:]
            piv = int(R[r, c])
            if piv != 1:
                R[r, c:] = self.mul(R[r, c:], self.inv_table[piv])
            col = R[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                R[hit, c:] ^= self.mul(col[hit, None], R[r, c:][None, :])
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, X) -> int:
        X = np.asarray(X, dtype=DTYPE)
        if X.size == 0:
            return 0
        if X.shape[0] > X.shape[1]:
            X = X.T
        return len(self.rref(X)[1])


def _big_tables(spec: FieldSpec):
    order = spec.unit_order
    g = next(m for m in range(2, spec.size) if spec.order(m) == order)
    exp = np.zeros(2 * order, dtype=np.int64)
    x = 1
    for i in range(order):
        exp[i] = x
        x = spec.mul(x, g)
    exp[order:] = exp[:order]
    log = np.zeros(spec.size, dtype=np.int64)
    log[exp[:order]] = np.arange(order)
    return log, exp


@functools.lru_cache(maxsize=None)
def ops_for(spec: FieldSpec) -> GFOps:
    return GFOps(spec)
