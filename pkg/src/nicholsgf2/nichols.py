"""Graded dimensions of Nichols algebras.

The main engine builds B(V) degree by degree.  A degree-n spanning set is
``{b x_j}`` over the degree-(n-1) basis; an element of positive degree is zero
in B(V) exactly when every skew derivation kills it, so each candidate is
identified with its *fingerprint* ``(d_1(b x_j), ..., d_dim(b x_j))`` in
``B^{n-1}`` and a maximal independent set of fingerprints is a basis.  The
twisted Leibniz rule gives the fingerprint from data already recorded:

    d_i(b x_j) = d_i(b) (g_i . x_j) + delta_ij b.

Everything is graded by the realizing group, so each degree splits into
independent blocks indexed by a group degree.

:func:`symmetrizer_dim` is an independent check: the rank of the quantum
symmetrizer on V^{(x) n}, using only the braiding matrix.
"""

from __future__ import annotations

import importlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .braided import BraidedSpace, validate_realization
from .freealg import NcPoly
from .linalg import DTYPE, ops_for
from .sparse import CSC, SparseVec, apply_columns, axpy, rref_columns
from .sparse import scale as sp_scale

Gamma = tuple[int, ...]

FINITE = "finite"
TRUNCATED = "truncated"


# blocks with more candidates than this go through the compiled kernels
BIG_BLOCK = 150


class NicholsError(ValueError):
    pass


def _jit_available() -> bool:
    try:
        importlib.import_module("._jit", __package__)
    except ImportError:
        return False
    return True


@dataclass
class Block:
    """The part of B^n living in one group degree.

    Linear maps are stored in compressed sparse columns, one column per local
    basis element of this block.
    """

    gamma: Gamma
    size: int
    glob: list[int]
    # d_i maps this block into B^{n-1}[gamma - deg_i]
    D: dict[int, CSC] = field(default_factory=dict)
    # right multiplication by x_j into B^{n+1}[gamma + deg_j]; absent means zero
    M: dict[int, CSC] = field(default_factory=dict)


@dataclass
class HilbertSeries:
    dims: list[int]
    status: str
    top_degree: int

    @property
    def total(self) -> int | None:
        return sum(self.dims) if self.status == FINITE else None

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "total": self.total, "status": self.status,
                "top_degree": self.top_degree}


class GradedBasis:
    """Per-degree bases of B(V) with derivation and multiplication maps."""

    def __init__(self, space: BraidedSpace):
        self.space = space
        self.mul = space.field.mul
        real = space.realization
        self.orders = real.orders
        self.gdeg: list[Gamma] = [self._norm(d) for d in real.degrees]
        self.G = [space.deg_matrix(i) for i in range(space.dim)]
        # nonzero entries G_i[k, j] as (k, value), indexed [i][j]
        self._Gcols = [[[(int(k), int(G[k, j])) for k in np.flatnonzero(G[:, j])]
                        for j in range(space.dim)] for G in self.G]
        zero = tuple(0 for _ in self.orders)
        self.levels: list[dict[Gamma, Block]] = [{zero: Block(zero, 1, [0])}]
        self.status = TRUNCATED
        self.max_degree = 0

    # -- group degrees ---------------------------------------------------
    def _norm(self, g) -> Gamma:
        return tuple(x % n if n else x for x, n in zip(g, self.orders))

    def _add(self, a: Gamma, b: Gamma) -> Gamma:
        return self._norm(tuple(x + y for x, y in zip(a, b)))

    def _sub(self, a: Gamma, b: Gamma) -> Gamma:
        return self._norm(tuple(x - y for x, y in zip(a, b)))

    # -- shape -------------------------------------------------------------
    @property
    def computed_degree(self) -> int:
        return len(self.levels) - 1

    @property
    def top_degree(self) -> int:
        return max(n for n, lvl in enumerate(self.levels) if lvl)

    def dim(self, n: int) -> int:
        if n < len(self.levels):
            return sum(b.size for b in self.levels[n].values())
        if self.status == FINITE:
            return 0
        raise NicholsError(f"degree {n} beyond computed range {self.computed_degree}")

    def dims(self) -> list[int]:
        return [self.dim(n) for n in range(self.top_degree + 1)]

    def multidims(self) -> dict[tuple[int, Gamma], int]:
        return {(n, g): b.size for n, lvl in enumerate(self.levels) for g, b in lvl.items()}

    def hilbert(self) -> HilbertSeries:
        dims = self.dims() if self.status == FINITE else [self.dim(n) for n in range(len(self.levels))]
        return HilbertSeries(dims, self.status, self.top_degree)

    @property
    def total(self) -> int | None:
        return sum(self.dims()) if self.status == FINITE else None

    # -- the engine --------------------------------------------------------
    def _extend(self) -> bool:
        """Compute the next degree; return False when it vanishes."""
        n = len(self.levels)
        prev = self.levels[n - 1]
        prev2 = self.levels[n - 2] if n >= 2 else {}
        gens = range(self.space.dim)

        cands: dict[Gamma, list[tuple[int, int, Gamma, int]]] = {}
        for beta, blk in prev.items():
            for j in gens:
                gamma = self._add(beta, self.gdeg[j])
                lst = cands.setdefault(gamma, [])
                for lb, gb in enumerate(blk.glob):
                    lst.append((gb, j, beta, lb))

        # M_k(beta - deg_i) d_i, shared by all j; lands in B^{n-1}[beta - deg_i + deg_k]
        self._Q: dict[tuple[Gamma, int, int], CSC | None] = {}
        self._prev, self._prev2 = prev, prev2

        new_level: dict[Gamma, Block] = {}
        chosen: list[tuple[int, int, Gamma, int]] = []
        mult_updates: list[tuple[Gamma, int, CSC]] = []
        for gamma in sorted(cands):
            lst = sorted(cands[gamma])
            row_off: dict[int, tuple[int, int]] = {}
            L = 0
            for i in gens:
                tau = self._sub(gamma, self.gdeg[i])
                if tau in prev:
                    row_off[i] = (L, prev[tau].size)
                    L += prev[tau].size
            if L == 0:
                continue
            groups: dict[tuple[Gamma, int], np.ndarray] = {}
            for c, (_, j, beta, lb) in enumerate(lst):
                cm = groups.get((beta, j))
                if cm is None:
                    cm = groups[(beta, j)] = np.full(prev[beta].size, -1, dtype=np.int64)
                cm[lb] = c
            if len(lst) > BIG_BLOCK and _jit_available():
                piv, D, M = self._reduce_compiled(len(lst), L, row_off, groups)
            else:
                piv, D, M = self._reduce_python(lst, row_off, groups)
            r = len(piv)
            if r == 0:
                continue
            blk = Block(gamma, r, [], D)
            new_level[gamma] = blk
            for local, c in enumerate(piv):
                gb, j, beta, lb = lst[c]
                chosen.append((gb, j, gamma, local))
            mult_updates.extend((beta, j, Mj) for (beta, j), Mj in M.items())

        chosen.sort()
        for g, (_, _, gamma, local) in enumerate(chosen):
            blk = new_level[gamma]
            if len(blk.glob) <= local:
                blk.glob.extend([-1] * (local + 1 - len(blk.glob)))
            blk.glob[local] = g
        for beta, j, Mj in mult_updates:
            if Mj:
                prev[beta].M[j] = Mj
        del self._Q, self._prev, self._prev2
        self.levels.append(new_level)
        return bool(new_level)

    def _q(self, beta: Gamma, i: int, k: int, compiled: bool) -> CSC | None:
        key = (beta, i, k)
        if key not in self._Q:
            Di = self._prev[beta].D.get(i)
            src = self._sub(beta, self.gdeg[i])
            Mk = self._prev2[src].M.get(k) if src in self._prev2 else None
            if Di is None or Mk is None:
                self._Q[key] = None
            elif compiled:
                from . import _jit
                log, exp = _jit.tables(self.space.field)
                ptr, idx, dat = _jit.spgemm(Mk.nrows, Mk.indptr, Mk.indices, Mk.data,
                                            Di.indptr, Di.indices, Di.data, log, exp)
                self._Q[key] = CSC(Mk.nrows, Di.ncols, ptr, idx, dat)
            else:
                mcols = Mk.columns()
                cols = [apply_columns(mcols, d, self.mul) for d in Di.columns()]
                self._Q[key] = CSC.from_columns(cols, Mk.nrows)
        return self._Q[key]

    def _reduce_python(self, lst, row_off, groups):
        mul = self.mul
        Gcols = self._Gcols
        cols: list[SparseVec] = []
        for _, j, beta, lb in lst:
            fp: SparseVec = {}
            for i, (off, _) in row_off.items():
                comp: SparseVec = {}
                for k, s in Gcols[i][j]:
                    P = self._q(beta, i, k, False)
                    if P is not None:
                        axpy(comp, s, P.columns()[lb], mul)
                if i == j:
                    comp[lb] = comp.get(lb, 0) ^ 1
                for r, v in comp.items():
                    if v:
                        fp[off + r] = v
            cols.append(fp)
        piv, coords = rref_columns(cols, self.space.field)
        r = len(piv)
        D: dict[int, CSC] = {}
        for i, (off, size) in row_off.items():
            Di = [{x - off: v for x, v in cols[c].items() if off <= x < off + size} for c in piv]
            if any(Di):
                D[i] = CSC.from_columns(Di, size)
        M = {key: CSC.from_columns([coords[c] for c in cm], r) for key, cm in groups.items()}
        return piv, D, M

    def _fill(self, F, row_off, groups, colmaps):
        from . import _jit
        log, exp = _jit.tables(self.space.field)
        for (beta, j), cm in colmaps.items():
            live = cm >= 0
            for i, (off, size) in row_off.items():
                for k, s in self._Gcols[i][j]:
                    P = self._q(beta, i, k, True)
                    if P is not None:
                        _jit.scatter(F, P.indptr, P.indices, P.data, s, off, cm, log, exp)
                if i == j:
                    lbs = np.flatnonzero(live)
                    F[off + lbs, cm[lbs]] ^= 1

    def _reduce_compiled(self, m, L, row_off, groups):
        from . import _jit
        log, exp = _jit.tables(self.space.field)
        dt = _jit.dense_dtype(self.space.field)
        F = np.zeros((L, m), dtype=dt, order="F")
        self._fill(F, row_off, groups, groups)
        piv, prow = _jit.rref(F, log, exp)
        r = len(piv)
        M = {}
        for key, cm in groups.items():
            M[key] = CSC(r, len(cm), *_jit.extract_csc(F, prow, cm))
        del F
        pos = np.full(m, -1, dtype=np.int64)
        pos[piv] = np.arange(r)
        Fp = np.zeros((L, r), dtype=dt, order="F")
        self._fill(Fp, row_off, groups, {key: pos[cm] for key, cm in groups.items()})
        D: dict[int, CSC] = {}
        every = np.arange(r)
        for i, (off, size) in row_off.items():
            Di = CSC(size, r, *_jit.extract_csc(Fp, np.arange(off, off + size), every))
            if Di:
                D[i] = Di
        return piv.tolist(), D, M

    # -- elements of B(V) ---------------------------------------------------
    def unit(self) -> "Element":
        zero = next(iter(self.levels[0]))
        return Element(self, 0, {zero: {0: 1}})

    def _check_degree(self, d: int):
        if d > self.computed_degree and self.status != FINITE:
            raise NicholsError(f"degree {d} beyond computed range {self.computed_degree}")

    def mul_gen(self, e: "Element", j: int) -> "Element":
        self._check_degree(e.degree + 1)
        out: dict[Gamma, SparseVec] = {}
        if e.degree < len(self.levels):
            lvl = self.levels[e.degree]
            for g, v in e.parts.items():
                Mj = lvl[g].M.get(j) if g in lvl else None
                if Mj is None:
                    continue
                tgt = self._add(g, self.gdeg[j])
                axpy(out.setdefault(tgt, {}), 1, apply_columns(Mj.columns(), v, self.mul), self.mul)
        return Element(self, e.degree + 1, out)

    def fold(self, e: "Element", terms: Iterable[tuple[tuple[int, ...], int]]) -> "Element":
        """Right-multiply ``e`` by a homogeneous polynomial given as (word, coeff) pairs."""
        terms = [(w, c) for w, c in terms if c]
        if not terms:
            return Element(self, e.degree, {})
        lens = {len(w) for w, _ in terms}
        if len(lens) != 1:
            raise NicholsError("fold needs a homogeneous polynomial")
        length = lens.pop()
        self._check_degree(e.degree + length)
        return self._fold(e, terms, 0)

    def _fold(self, e, terms, pos) -> "Element":
        if pos == len(terms[0][0]):
            s = 0
            for _, c in terms:
                s ^= c
            return e.scale(s)
        groups: dict[int, list] = {}
        for w, c in terms:
            groups.setdefault(w[pos], []).append((w, c))
        acc = Element(self, e.degree + len(terms[0][0]) - pos, {})
        for j in sorted(groups):
            if not e:
                break
            acc = acc + self._fold(self.mul_gen(e, j), groups[j], pos + 1)
        return acc

    def element(self, p: NcPoly) -> "Element":
        """Image of a homogeneous polynomial in B(V)."""
        if p.space is not self.space:
            raise NicholsError("polynomial over a different space")
        if not p:
            return Element(self, 0, {})
        if p.degree is None:
            raise NicholsError("project needs a homogeneous polynomial")
        return self.fold(self.unit(), p.terms.items())

    def project(self, p: NcPoly) -> np.ndarray:
        """Coordinates of the image of p in B^d(V), in the global basis order."""
        if not p:
            return np.zeros(0, dtype=DTYPE)
        return self.element(p).to_vector()

    def is_zero(self, p: NcPoly) -> bool:
        return not self.element(p) if p else True

    # -- dense global matrices -----------------------------------------------
    def _dense(self, out, blocks, src_level, maps, shift):
        for g, blk in src_level.items():
            A = maps(blk)
            if A is None:
                continue
            tgt = blocks[shift(g)]
            out[np.ix_(tgt.glob, blk.glob)] = A.to_dense()
        return out

    def derivation_matrix(self, i: int, n: int) -> np.ndarray:
        """D_i^n : B^n -> B^{n-1} in global coordinates."""
        out = np.zeros((self.dim(n - 1), self.dim(n)), dtype=DTYPE)
        if n >= len(self.levels):
            return out
        return self._dense(out, self.levels[n - 1], self.levels[n], lambda b: b.D.get(i),
                           lambda g: self._sub(g, self.gdeg[i]))

    def mult_matrix(self, j: int, n: int) -> np.ndarray:
        """M_j^n : B^n -> B^{n+1} (right multiplication by x_j)."""
        out = np.zeros((self.dim(n + 1), self.dim(n)), dtype=DTYPE)
        if n + 1 >= len(self.levels):
            return out
        return self._dense(out, self.levels[n + 1], self.levels[n], lambda b: b.M.get(j),
                           lambda g: self._add(g, self.gdeg[j]))


class Element:
    """A homogeneous element of B(V): sparse local coordinates per group degree."""

    __slots__ = ("gb", "degree", "parts")

    def __init__(self, gb: GradedBasis, degree: int, parts: dict[Gamma, SparseVec]):
        self.gb = gb
        self.degree = degree
        self.parts = {g: v for g, v in parts.items() if v}

    def __bool__(self):
        return bool(self.parts)

    def __add__(self, other: "Element") -> "Element":
        if not other.parts:
            return self
        if not self.parts:
            return other
        if other.degree != self.degree:
            raise NicholsError("adding elements of different degrees")
        out = {g: dict(v) for g, v in self.parts.items()}
        for g, v in other.parts.items():
            axpy(out.setdefault(g, {}), 1, v, self.gb.mul)
        return Element(self.gb, self.degree, out)

    __sub__ = __add__

    def scale(self, s: int) -> "Element":
        return Element(self.gb, self.degree, {g: sp_scale(v, s, self.gb.mul) for g, v in self.parts.items()})

    def __mul__(self, p: NcPoly) -> "Element":
        """Right multiplication by a homogeneous polynomial."""
        return self.gb.fold(self, p.terms.items())

    def to_vector(self) -> np.ndarray:
        gb = self.gb
        out = np.zeros(gb.dim(self.degree), dtype=DTYPE)
        if self.degree < len(gb.levels):
            lvl = gb.levels[self.degree]
            for g, v in self.parts.items():
                glob = lvl[g].glob
                for r, x in v.items():
                    out[glob[r]] = x
        return out


def compute(space: BraidedSpace, max_degree: int) -> GradedBasis:
    """Bases of B^n(V) for n <= max_degree, stopping at the first vanishing degree."""
    if space.realization is None:
        raise NicholsError("the engine needs a realization")
    bad = validate_realization(space)
    if bad:
        raise NicholsError(f"invalid realization: {bad[0].detail}")
    if max_degree < 1:
        raise NicholsError("max_degree must be positive")
    gb = GradedBasis(space)
    for _ in range(max_degree):
        if not gb._extend():
            gb.status = FINITE
            gb.levels.pop()
            break
    gb.max_degree = max_degree
    return gb


def project(gb: GradedBasis, p: NcPoly) -> np.ndarray:
    return gb.project(p)


def is_zero_in_nichols(gb: GradedBasis, p: NcPoly) -> bool:
    return gb.is_zero(p)


# -- quantum symmetrizer oracle ------------------------------------------------

SYMMETRIZER_GUARD = 2_000_000


def _braid_classes(space: BraidedSpace) -> list[int]:
    """Coarsest-needed partition of the basis preserved letterwise by c."""
    d = space.dim
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.product(range(d), repeat=2):
        img = space.braid(i, j)
        for k, l in zip(*np.nonzero(img)):
            for a, b in ((int(k), j), (int(l), i)):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    roots = sorted({find(x) for x in range(d)})
    return [roots.index(find(x)) for x in range(d)]


def symmetrizer_blocks(space: BraidedSpace, n: int) -> list[list[tuple[int, ...]]]:
    cls = _braid_classes(space)
    by_content: dict[tuple[int, ...], list] = {}
    for w in itertools.product(range(space.dim), repeat=n):
        key = tuple(sorted(cls[x] for x in w))
        by_content.setdefault(key, []).append(w)
    return [by_content[k] for k in sorted(by_content)]


def _sparse_braid(space: BraidedSpace, words, index, p):
    rows, cols, vals = [], [], []
    for col, w in enumerate(words):
        img = space.braid(w[p], w[p + 1])
        for k, l in zip(*np.nonzero(img)):
            v = w[:p] + (int(k), int(l)) + w[p + 2:]
            rows.append(index[v])
            cols.append(col)
            vals.append(int(img[k, l]))
    return np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64), np.asarray(vals, dtype=DTYPE)


def _apply_sparse(ops, op, Y):
    rows, cols, vals = op
    out = np.zeros_like(Y)
    np.bitwise_xor.at(out, rows, ops.mul(vals[:, None], Y[cols]))
    return out


def symmetrizer_matrix(space: BraidedSpace, words: Sequence[tuple[int, ...]]) -> np.ndarray:
    """The symmetrizer restricted to a c-stable set of words (columns = images)."""
    ops = ops_for(space.field)
    n = len(words[0]) if words else 0
    index = {w: i for i, w in enumerate(words)}
    braids = [_sparse_braid(space, words, index, p) for p in range(n - 1)]
    Y = np.eye(len(words), dtype=DTYPE)
    # S_n = T_2 T_3 ... T_n with T_k = 1 + c_{k-1}(1 + c_{k-2}(... (1 + c_1)))
    for k in range(n, 1, -1):
        P = Y
        for p in range(k - 1):
            P = Y ^ _apply_sparse(ops, braids[p], P)
        Y = P
    return Y


def symmetrizer_dim(space: BraidedSpace, n: int) -> int:
    """dim B^n(V) as the rank of the quantum symmetrizer on V^{(x) n}."""
    if n < 0:
        raise NicholsError("negative degree")
    if n == 0:
        return 1
    if space.dim ** n > SYMMETRIZER_GUARD:
        raise NicholsError(f"dim^n = {space.dim ** n} exceeds guard {SYMMETRIZER_GUARD}")
    ops = ops_for(space.field)
    return sum(ops.rank(symmetrizer_matrix(space, words)) for words in symmetrizer_blocks(space, n))
