"""Braided vector spaces and their realizations over abelian groups.

A braiding is stored densely: ``c[k*dim + l, i*dim + j]`` is the coefficient
of ``x_k (x) x_l`` in ``c(x_i (x) x_j)``.  Basis labels are doubled integers,
``2*i`` for ``x_i`` and ``2*i + 1`` for ``x_{i+1/2}``.

Every constructor builds the braiding from a realization via
``c(x_i (x) x_j) = (g_{deg i} . x_j) (x) x_i`` and then checks the braid
equation independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .field import FieldElement, FieldSpec
from .linalg import DTYPE, ops_for


class BraidedError(ValueError):
    pass


def label_text(label: int) -> str:
    return str(label // 2) if label % 2 == 0 else f"{label}/2"


def parse_label(text: str) -> int:
    text = text.strip()
    if text.endswith("/2"):
        n = int(text[:-2])
        if n % 2 == 0:
            raise BraidedError(f"bad half-integer label {text!r}")
        return n
    return 2 * int(text)


@dataclass(frozen=True)
class Realization:
    """Grading and action of a finitely generated abelian group on V.

    ``orders[r]`` is the order of the r-th cyclic factor (0 = infinite);
    ``actions[r][:, j]`` is the image of ``x_j`` under the r-th generator;
    ``degrees[i]`` is the exponent vector of ``deg x_i``.
    """

    orders: tuple[int, ...]
    actions: tuple[np.ndarray, ...]
    degrees: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.orders)

    def with_orders(self, orders: Sequence[int]) -> "Realization":
        orders = tuple(orders)
        if len(orders) != self.rank:
            raise BraidedError("wrong number of cyclic factors")
        degs = tuple(tuple(e % n if n else e for e, n in zip(d, orders)) for d in self.degrees)
        return Realization(orders, self.actions, degs)


@dataclass(frozen=True, eq=False)
class BraidedSpace:
    field: FieldSpec
    labels: tuple[int, ...]
    c: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)
    realization: Realization | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: int | str) -> int:
        if isinstance(label, str):
            label = parse_label(label)
        return self.labels.index(label)

    def label_names(self) -> list[str]:
        return [label_text(l) for l in self.labels]

    def braid(self, i: int, j: int) -> np.ndarray:
        """Coefficients of c(x_i (x) x_j) as a dim x dim array indexed (k, l)."""
        d = self.dim
        return self.c[:, i * d + j].reshape(d, d)

    def group_matrix(self, exponents: Sequence[int]) -> np.ndarray:
        """Action matrix of the group element with the given exponent vector."""
        if self.realization is None:
            raise BraidedError("space has no realization")
        return group_matrix(self.field, self.realization, exponents)

    def deg_matrix(self, i: int) -> np.ndarray:
        """Action matrix of g_{deg x_i}."""
        return self.group_matrix(self.realization.degrees[i])

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "dim": self.dim,
            "labels": self.label_names(),
            "field": self.field.to_json(),
            "params": self.params,
            "c": [[int(v) for v in row] for row in self.c],
        }


def _mat_pow(ops, A: np.ndarray, n: int) -> np.ndarray:
    R = np.eye(A.shape[0], dtype=DTYPE)
    while n:
        if n & 1:
            R = ops.matmul(R, A)
        A = ops.matmul(A, A)
        n >>= 1
    return R


def mat_inv(spec: FieldSpec, A: np.ndarray) -> np.ndarray:
    ops = ops_for(spec)
    n = A.shape[0]
    aug = np.concatenate([np.asarray(A, dtype=DTYPE), np.eye(n, dtype=DTYPE)], axis=1)
    R, piv = ops.rref(aug)
    if piv[:n] != list(range(n)):
        raise BraidedError("matrix is singular")
    return R[:, n:]


def group_matrix(spec: FieldSpec, real: Realization, exponents: Sequence[int]) -> np.ndarray:
    ops = ops_for(spec)
    dim = real.actions[0].shape[0] if real.actions else len(real.degrees)
    M = np.eye(dim, dtype=DTYPE)
    for A, N, e in zip(real.actions, real.orders, exponents):
        if N:
            e %= N
        if e < 0:
            A, e = mat_inv(spec, A), -e
        if e:
            M = ops.matmul(M, _mat_pow(ops, A, e))
    return M


def braiding_from_realization(spec: FieldSpec, real: Realization) -> np.ndarray:
    d = len(real.degrees)
    c = np.zeros((d * d, d * d), dtype=DTYPE)
    cache = {}
    for i in range(d):
        deg = real.degrees[i]
        if deg not in cache:
            cache[deg] = group_matrix(spec, real, deg)
        G = cache[deg]
        for j in range(d):
            for k in range(d):
                c[k * d + i, i * d + j] = G[k, j]
    return c


def braid_equation_holds(space: BraidedSpace) -> bool:
    ops = ops_for(space.field)
    I = np.eye(space.dim, dtype=DTYPE)
    c1 = np.kron(space.c, I).astype(DTYPE)
    c2 = np.kron(I, space.c).astype(DTYPE)
    lhs = ops.matmul(ops.matmul(c1, c2), c1)
    rhs = ops.matmul(ops.matmul(c2, c1), c2)
    return bool(np.array_equal(lhs, rhs))


def is_invertible(space: BraidedSpace) -> bool:
    return ops_for(space.field).rank(space.c) == space.dim ** 2


def _masks(x) -> np.ndarray:
    return np.vectorize(lambda e: e.mask, otypes=[np.int64])(np.asarray(x, dtype=object)).astype(DTYPE)


def _field_of(*elements: FieldElement) -> FieldSpec:
    specs = {e.spec for e in elements}
    if len(specs) != 1:
        raise BraidedError("parameters live in different fields")
    return specs.pop()


def _finish(spec, labels, real, family, params) -> BraidedSpace:
    c = braiding_from_realization(spec, real)
    space = BraidedSpace(spec, tuple(labels), c, family, params, real)
    if not braid_equation_holds(space):
        raise BraidedError(f"{family}: braid equation fails")
    return space


def _unit(r: int, n: int) -> tuple[int, ...]:
    return tuple(1 if s == r else 0 for s in range(n))


def _check_nonzero(**named):
    for name, e in named.items():
        if not e:
            raise BraidedError(f"parameter {name} must be nonzero")


def _check_matrix(q, theta=None):
    q = [list(row) for row in q]
    n = len(q)
    if any(len(row) != n for row in q) or (theta is not None and n != theta):
        raise BraidedError("braiding matrix must be square of the expected size")
    for i, j in itertools.product(range(n), repeat=2):
        if not q[i][j]:
            raise BraidedError(f"q[{i + 1}][{j + 1}] is zero")
    return q


def _mat_json(q):
    return [[str(e) for e in row] for row in q]


def diagonal(q, family: str = "diagonal") -> BraidedSpace:
    """Diagonal type: c(x_i (x) x_j) = q_ij x_j (x) x_i, realized over Z^theta."""
    q = _check_matrix(q)
    spec = _field_of(*[e for row in q for e in row])
    n = len(q)
    Q = _masks(q)
    actions = tuple(np.diag(Q[r]).astype(DTYPE) for r in range(n))
    real = Realization((0,) * n, actions, tuple(_unit(r, n) for r in range(n)))
    return _finish(spec, [2 * (i + 1) for i in range(n)], real, family, {"q": _mat_json(q)})


def block(eps: FieldElement, l: int = 2) -> BraidedSpace:
    """The block V(eps, l): c(x_i (x) x_j) = (eps x_j + x_{j-1}) (x) x_i."""
    if l < 2:
        raise BraidedError("block size must be at least 2")
    _check_nonzero(eps=eps)
    spec = eps.spec
    A = np.zeros((l, l), dtype=DTYPE)
    for j in range(l):
        A[j, j] = eps.mask
        if j:
            A[j - 1, j] = 1
    real = Realization((0,), (A,), ((1,),) * l)
    return _finish(spec, [2 * (i + 1) for i in range(l)], real, "block",
                   {"eps": str(eps), "l": l})


def jordan(spec: FieldSpec) -> BraidedSpace:
    """The 1-block V(1, 2)."""
    s = block(spec.one, 2)
    return BraidedSpace(s.field, s.labels, s.c, "jordan", {}, s.realization)


def lstr(p: FieldElement, q22: FieldElement, a: FieldElement) -> BraidedSpace:
    """One block <x1, x2> and one point x3, with q12 = p and q21 = 1/p."""
    _check_nonzero(p=p, q22=q22)
    spec = _field_of(p, q22, a)
    q12, q21 = p.mask, p.inv().mask
    f = spec.mul
    g1 = np.array([[1, 1, 0], [0, 1, 0], [0, 0, q12]], dtype=DTYPE)
    g2 = np.array([[q21, f(q21, a.mask), 0], [0, q21, 0], [0, 0, q22.mask]], dtype=DTYPE)
    real = Realization((0, 0), (g1, g2), ((1, 0), (1, 0), (0, 1)))
    return _finish(spec, [2, 4, 6], real, "lstr",
                   {"p": str(p), "q22": str(q22), "a": str(a)})


def block_points(q, a: Sequence[FieldElement]) -> BraidedSpace:
    """One block <x1, x_{3/2}> and points x2..x_theta."""
    q = _check_matrix(q)
    theta = len(q)
    a = list(a)
    if theta < 3:
        raise BraidedError("block_points needs theta >= 3")
    if len(a) != theta:
        raise BraidedError("need one a-parameter per vertex")
    spec = _field_of(*[e for row in q for e in row], *a)
    if q[0][0] != 1 or a[0] != 1:
        raise BraidedError("hypothesis: q11 = 1 and a1 = 1")
    for j in range(1, theta):
        if q[0][j] * q[j][0] != 1:
            raise BraidedError(f"hypothesis: q1{j + 1} q{j + 1}1 = 1")
    if all(not e for e in a[1:]):
        raise BraidedError("hypothesis: a != (1, 0, ..., 0)")
    Q = _masks(q)
    d = theta + 1
    # basis order: x1, x_{3/2}, x2, ..., x_theta
    point = {j: j + 1 for j in range(1, theta)}
    actions = []
    for h in range(theta):
        A = np.zeros((d, d), dtype=DTYPE)
        A[0, 0] = Q[h, 0]
        A[1, 1] = Q[h, 0]
        A[0, 1] = spec.mul(int(Q[h, 0]), a[h].mask)
        for j, idx in point.items():
            A[idx, idx] = Q[h, j]
        actions.append(A)
    degrees = [_unit(0, theta), _unit(0, theta)] + [_unit(j, theta) for j in range(1, theta)]
    real = Realization((0,) * theta, tuple(actions), tuple(degrees))
    labels = [2, 3] + [2 * (j + 1) for j in range(1, theta)]
    return _finish(spec, labels, real, "block_points",
                   {"q": _mat_json(q), "a": [str(e) for e in a]})


def poseidon(q, a: Sequence[FieldElement]) -> BraidedSpace:
    """Blocks <x_j, x_{j+1/2}> for j = 1..t and one point x_theta, theta = t + 1."""
    q = _check_matrix(q)
    a = list(a)
    t = len(a)
    theta = t + 1
    if t < 2:
        raise BraidedError("poseidon needs t >= 2 blocks")
    if len(q) != theta:
        raise BraidedError("q must be (t+1) x (t+1)")
    spec = _field_of(*[e for row in q for e in row], *a)
    for i in range(theta):
        if q[i][i] != 1:
            raise BraidedError(f"hypothesis: q{i + 1}{i + 1} = 1")
        for j in range(i + 1, theta):
            if q[i][j] * q[j][i] != 1:
                raise BraidedError(f"hypothesis: q{i + 1}{j + 1} q{j + 1}{i + 1} = 1")
    for j, e in enumerate(a):
        if not e:
            raise BraidedError(f"hypothesis: a{j + 1} != 0")
    Q = _masks(q)
    d = 2 * t + 1
    actions = []
    for h in range(theta):
        A = np.zeros((d, d), dtype=DTYPE)
        for j in range(t):
            lo, hi = 2 * j, 2 * j + 1
            A[lo, lo] = Q[h, j]
            A[hi, hi] = Q[h, j]
            if h == j:
                A[lo, hi] = 1
            elif h == t:
                A[lo, hi] = spec.mul(int(Q[h, j]), a[j].mask)
        A[2 * t, 2 * t] = Q[h, t]
        actions.append(A)
    degrees = []
    for j in range(t):
        degrees += [_unit(j, theta)] * 2
    degrees.append(_unit(t, theta))
    labels = []
    for j in range(1, t + 1):
        labels += [2 * j, 2 * j + 1]
    labels.append(2 * theta)
    real = Realization((0,) * theta, tuple(actions), tuple(degrees))
    return _finish(spec, labels, real, "poseidon",
                   {"q": _mat_json(q), "a": [str(e) for e in a]})


def pale(p: FieldElement, q22: FieldElement) -> BraidedSpace:
    """Pale block <x1, x2> and one point x3; only g2 acts non-semisimply."""
    _check_nonzero(p=p, q22=q22)
    spec = _field_of(p, q22)
    q12, q21 = p.mask, p.inv().mask
    g1 = np.array([[1, 0, 0], [0, 1, 0], [0, 0, q12]], dtype=DTYPE)
    g2 = np.array([[q21, q21, 0], [0, q21, 0], [0, 0, q22.mask]], dtype=DTYPE)
    real = Realization((0, 0), (g1, g2), ((1, 0), (1, 0), (0, 1)))
    return _finish(spec, [2, 4, 6], real, "pale", {"p": str(p), "q22": str(q22)})


def restrict(space: BraidedSpace, indices: Sequence[int], family: str = "custom") -> BraidedSpace:
    """The braided subspace spanned by the given basis vectors."""
    idx = list(indices)
    rest = [i for i in range(space.dim) if i not in idx]
    d = space.dim
    for i, j in itertools.product(idx, repeat=2):
        img = space.braid(i, j)
        if img[rest, :].any() or img[:, rest].any():
            raise BraidedError("subspace is not stable under the braiding")
    sub = np.ix_([k * d + l for k in idx for l in idx], [i * d + j for i in idx for j in idx])
    c = space.c[sub]
    real = None
    if space.realization is not None:
        r = space.realization
        for A in r.actions:
            if A[np.ix_(rest, idx)].any():
                raise BraidedError("subspace is not stable under the group")
        real = Realization(r.orders, tuple(A[np.ix_(idx, idx)] for A in r.actions),
                           tuple(r.degrees[i] for i in idx))
    return BraidedSpace(space.field, tuple(space.labels[i] for i in idx), c, family,
                        {"parent": space.family, "basis": [label_text(space.labels[i]) for i in idx]},
                        real)


@dataclass(frozen=True)
class Violation:
    invariant: str
    where: tuple
    detail: str = ""


def validate_realization(space: BraidedSpace, real: Realization | None = None) -> list[Violation]:
    """All failed realization invariants; an empty list means the realization is valid."""
    real = real if real is not None else space.realization
    if real is None:
        return [Violation("present", (), "no realization")]
    spec = space.field
    ops = ops_for(spec)
    d = space.dim
    out: list[Violation] = []
    if len(real.actions) != real.rank or len(real.degrees) != d:
        return [Violation("shape", (), "orders/actions/degrees lengths disagree")]
    for r, A in enumerate(real.actions):
        if A.shape != (d, d):
            return [Violation("shape", (r,), f"action {r} is not {d}x{d}")]
    for i, deg in enumerate(real.degrees):
        if len(deg) != real.rank:
            return [Violation("shape", (i,), "degree vector has wrong length")]
    for r, s in itertools.combinations(range(real.rank), 2):
        A, B = real.actions[r], real.actions[s]
        if not np.array_equal(ops.matmul(A, B), ops.matmul(B, A)):
            out.append(Violation("commute", (r, s), f"g{r + 1} and g{s + 1} do not commute"))
    for r, (A, N) in enumerate(zip(real.actions, real.orders)):
        if ops.rank(A) != d:
            out.append(Violation("invertible", (r,), f"g{r + 1} acts singularly"))
            continue
        if N and not np.array_equal(_mat_pow(ops, A, N), np.eye(d, dtype=DTYPE)):
            out.append(Violation("order", (r,), f"g{r + 1}^{N} does not act as the identity"))
    def same_degree(k, j):
        return all((x - y) % N == 0 if N else x == y
                   for x, y, N in zip(real.degrees[k], real.degrees[j], real.orders))
    for r, A in enumerate(real.actions):
        for k, j in zip(*np.nonzero(A)):
            if not same_degree(k, j):
                out.append(Violation("grading", (r, int(k), int(j)),
                                     f"g{r + 1} moves x{j + 1} out of its degree"))
    if any(v.invariant in ("invertible",) for v in out):
        return out
    c = braiding_from_realization(spec, real)
    for i, j in itertools.product(range(d), repeat=2):
        if not np.array_equal(c[:, i * d + j], space.c[:, i * d + j]):
            out.append(Violation("compatibility", (i, j),
                                 f"c(x{i + 1} (x) x{j + 1}) != (g_deg{i + 1} . x{j + 1}) (x) x{i + 1}"))
    return out


def cyclic_block_realization(spec: FieldSpec, N: int) -> tuple[BraidedSpace, Realization]:
    """The 1-block graded by a cyclic group of order N, generator acting by (1 1; 0 1)."""
    space = jordan(spec)
    A = np.array([[1, 1], [0, 1]], dtype=DTYPE)
    return space, Realization((N,), (A,), ((1 % N if N else 1,),) * 2)
