"""The K^1 = ad_c B(V_1)(V_2) generators, their diagonal braiding, and Dynkin diagrams.

For each family V = V_1 (+) V_2 with V_1 the block part, K^1 has a basis of
iterated braided commutators and is of diagonal type.  The braiding matrix is
filled from closed formulas and cross-checked by the factorization

    H_{B(V)}(t) = H_{B(V_1)}(t) * H_{B(K^1)}(t),

where K^1 generators are weighted by their degree in T(V).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
from networkx.algorithms import isomorphism as iso

from .braided import BraidedError, BraidedSpace, diagonal, restrict
from .field import FieldElement
from .freealg import NcPoly, ad_c_word
from .nichols import FINITE, GradedBasis, compute


@dataclass
class K1Generator:
    name: str
    poly: NcPoly
    degree: int
    gamma: tuple[int, ...]
    index: tuple = ()

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "gamma": list(self.gamma),
                "index": list(self.index), "poly": str(self.poly)}


@dataclass
class K1Data:
    family: str
    generators: list[K1Generator]
    q_matrix: list[list[FieldElement]]
    v1: list[int]
    # generators expected to vanish in B(V) (the next iterated commutators)
    vanishing: list[K1Generator] = field(default_factory=list)

    @property
    def weights(self) -> list[int]:
        return [g.degree for g in self.generators]

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def diagonal_space(self) -> BraidedSpace:
        return diagonal(self.q_matrix, family="k1")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "generators": [g.to_json() for g in self.generators],
            "q_matrix": [[str(e) for e in row] for row in self.q_matrix],
            "v1": list(self.v1),
        }


def _param(space: BraidedSpace, name: str) -> FieldElement:
    return space.field.parse(space.params[name])


def _params_matrix(space: BraidedSpace) -> list[list[FieldElement]]:
    return [[space.field.parse(e) for e in row] for row in space.params["q"]]


def _gamma(space: BraidedSpace, word: Sequence[int]) -> tuple[int, ...]:
    degs = space.realization.degrees
    return tuple(sum(degs[i][r] for i in word) for r in range(len(degs[0])))


def _gen(space, name, poly, index=()) -> K1Generator:
    w = next(iter(poly.terms)) if poly.terms else ()
    return K1Generator(name, poly, len(w), _gamma(space, w), tuple(index))


def zn(space: BraidedSpace, n: int, x: int, point: int) -> NcPoly:
    """(ad_c x)^n applied to the point generator."""
    return ad_c_word([x] * n, NcPoly.gen(space, point))


def lstr_count(a: FieldElement) -> int:
    if a == 0:
        return 1
    return 3 if a == 1 else 4


def _lstr_like(space: BraidedSpace, count: int, vanish: Sequence[int]) -> K1Data:
    q12 = _param(space, "p")
    q21 = q12.inv()
    q22 = _param(space, "q22")

    def z(n):
        return _gen(space, f"z{n}", zn(space, n, 1, 2), (n,))

    gens = [z(n) for n in range(count)]
    qm = [[q21 ** (j - i) * q22 for j in range(count)] for i in range(count)]
    return K1Data(space.family, gens, qm, [0, 1], [z(n) for n in vanish])


def k1_lstr(space: BraidedSpace) -> K1Data:
    count = lstr_count(_param(space, "a"))
    return _lstr_like(space, count, sorted({count, 4}))


def k1_pale(space: BraidedSpace) -> K1Data:
    data = _lstr_like(space, 2, [2])
    # w_1 = ad_c x1 (x3) vanishes as well
    data.vanishing.append(_gen(space, "w1", zn(space, 1, 0, 2), (1, 0)))
    return data


def block_points_J(a: Sequence[FieldElement]) -> list[tuple[int, int]]:
    """Index set J: pairs (i, n) with i = 2..theta (1-based) and n in the range set by a_i."""
    out = []
    for i in range(2, len(a) + 1):
        out += [(i, n) for n in range(lstr_count(a[i - 1]))]
    return out


def k1_block_points(space: BraidedSpace) -> K1Data:
    q = _params_matrix(space)
    a = [space.field.parse(e) for e in space.params["a"]]
    J = block_points_J(a)
    half = 1  # basis position of x_{3/2}

    def z(i, n):
        return _gen(space, f"z{i},{n}", zn(space, n, half, i), (i, n))

    gens = [z(i, n) for i, n in J]
    qm = [[q[i - 1][0] ** n * q[0][j - 1] ** m * q[i - 1][j - 1] for (j, n) in J] for (i, m) in J]
    vanish = [z(i, lstr_count(a[i - 1])) for i in range(2, len(a) + 1)]
    return K1Data(space.family, gens, qm, [0, 1], vanish)


def poseidon_b(a: Sequence[FieldElement]) -> list[int]:
    return [2 if e == 1 else 3 for e in a]


def poseidon_A(a: Sequence[FieldElement]) -> list[tuple[int, ...]]:
    """All n <= b in lexicographic order."""
    return list(itertools.product(*[range(b + 1) for b in poseidon_b(a)]))


def s_n(space: BraidedSpace, n: Sequence[int]) -> NcPoly:
    """(ad_c x_{3/2})^{n_1} ... (ad_c x_{t+1/2})^{n_t} x_theta."""
    t = len(n)
    letters = []
    for j in range(t):
        letters += [2 * j + 1] * n[j]
    return ad_c_word(letters, NcPoly.gen(space, 2 * t))


def poseidon_p(q: Sequence[Sequence[FieldElement]], m: Sequence[int], n: Sequence[int]) -> FieldElement:
    """Braiding coefficient between s_m and s_n (the q_{theta theta} factor included)."""
    t = len(m)
    out = q[t][t]
    for i in range(t):
        out = out * q[i][t] ** m[i] * q[t][i] ** n[i]
        for j in range(t):
            out = out * q[i][j] ** (m[i] * n[j])
    return out


def k1_poseidon(space: BraidedSpace) -> K1Data:
    q = _params_matrix(space)
    a = [space.field.parse(e) for e in space.params["a"]]
    t = len(a)
    A = poseidon_A(a)

    def s(n):
        return _gen(space, "s(" + ",".join(map(str, n)) + ")", s_n(space, n), n)

    gens = [s(n) for n in A]
    qm = [[poseidon_p(q, m, n) for n in A] for m in A]
    b = poseidon_b(a)
    vanish = [s(tuple(b[i] + 1 if k == i else 0 for k in range(t))) for i in range(t)]
    return K1Data(space.family, gens, qm, list(range(2 * t)), vanish)


_K1 = {"lstr": k1_lstr, "pale": k1_pale, "block_points": k1_block_points, "poseidon": k1_poseidon}


def k1_for(space: BraidedSpace) -> K1Data:
    try:
        build = _K1[space.family]
    except KeyError:
        raise BraidedError(f"no K^1 description for family {space.family!r}") from None
    return build(space)


# -- Dynkin diagrams -----------------------------------------------------------

@dataclass
class DynkinDiagram:
    vertices: list[FieldElement]
    edges: dict[tuple[int, int], FieldElement]
    names: list[str] | None = None

    @property
    def components(self) -> list[list[int]]:
        return [sorted(c) for c in sorted(nx.connected_components(self.graph()), key=min)]

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for i, v in enumerate(self.vertices):
            g.add_node(i, label=v.mask)
        for (i, j), e in self.edges.items():
            g.add_edge(i, j, label=e.mask)
        return g

    def isomorphic(self, other: "DynkinDiagram") -> bool:
        return nx.is_isomorphic(self.graph(), other.graph(),
                                node_match=iso.categorical_node_match("label", None),
                                edge_match=iso.categorical_edge_match("label", None))

    def contains(self, other: "DynkinDiagram") -> bool:
        """True if ``other`` is a label-preserving induced subdiagram."""
        gm = iso.GraphMatcher(self.graph(), other.graph(),
                              node_match=iso.categorical_node_match("label", None),
                              edge_match=iso.categorical_edge_match("label", None))
        return gm.subgraph_is_isomorphic()

    def text(self) -> str:
        lines = [f"v{i}: {v}" for i, v in enumerate(self.vertices)]
        lines += [f"e{i}-{j}: {e}" for (i, j), e in sorted(self.edges.items())]
        return "\n".join(lines)

    def to_json(self) -> dict:
        out = {
            "vertices": [{"id": i, "label": str(v)} for i, v in enumerate(self.vertices)],
            "edges": [{"source": i, "target": j, "label": str(e)} for (i, j), e in sorted(self.edges.items())],
            "components": self.components,
        }
        if self.names is not None:
            out["names"] = list(self.names)
        return out


def dynkin(q: Sequence[Sequence[FieldElement]], names: Sequence[str] | None = None) -> DynkinDiagram:
    n = len(q)
    for i, j in itertools.product(range(n), repeat=2):
        if not q[i][j]:
            raise BraidedError(f"zero braiding entry at ({i}, {j})")
    verts = [q[i][i] for i in range(n)]
    edges = {}
    for i, j in itertools.combinations(range(n), 2):
        e = q[i][j] * q[j][i]
        if e != 1:
            edges[(i, j)] = e
    return DynkinDiagram(verts, edges, list(names) if names is not None else None)


def displayed_diagram(space: BraidedSpace) -> DynkinDiagram:
    """The obstruction diagram drawn for each family, built from the parameters alone.

    lstr: complete graph on 3 (a = 1) or 4 (a not in {0, 1}) vertices labelled
    q22 with edges q22^2.  pale: two vertices q22 joined by q22^2.
    block_points (theta = 3): a centre vertex joined by q23 q32 to three
    vertices labelled 1; the centre is whichever point x_c has a_c = 0 and
    carries q_cc.  poseidon: totally disconnected, all labels 1.
    """
    fam = space.family
    one = space.field.one
    if fam in ("lstr", "pale"):
        q22 = _param(space, "q22")
        n = 2 if fam == "pale" else lstr_count(_param(space, "a"))
        edges = {} if q22 * q22 == 1 else {(i, j): q22 * q22 for i, j in itertools.combinations(range(n), 2)}
        return DynkinDiagram([q22] * n, edges)
    if fam == "block_points":
        q = _params_matrix(space)
        a = [space.field.parse(e) for e in space.params["a"]]
        if len(q) != 3 or sorted((bool(a[1]), bool(a[2]))) != [False, True]:
            raise BraidedError("displayed diagram drawn only for theta = 3 with one of a2, a3 zero")
        c = 1 if not a[1] else 2  # the point with a = 0 sits in the centre
        qt = q[1][2] * q[2][1]
        edges = {} if qt == 1 else {(0, k): qt for k in (1, 2, 3)}
        return DynkinDiagram([q[c][c], one, one, one], edges)
    if fam == "poseidon":
        return DynkinDiagram([one] * len(poseidon_A([space.field.parse(e) for e in space.params["a"]])), {})
    raise BraidedError(f"no displayed diagram for family {fam!r}")


# -- factorization check ----------------------------------------------------------

def weighted_series(gb: GradedBasis, weights: Sequence[int], upto: int) -> list[int]:
    """Hilbert series of a diagonal-type Nichols algebra with generator i in degree weights[i].

    Uses the Z^N multidegrees recorded by the engine.
    """
    out = [0] * (upto + 1)
    for (_, gamma), size in gb.multidims().items():
        d = sum(w * g for w, g in zip(weights, gamma))
        if d <= upto:
            out[d] += size
    return out


def series_product(a: Sequence[int], b: Sequence[int], upto: int) -> list[int]:
    out = [0] * (upto + 1)
    for i, x in enumerate(a[:upto + 1]):
        for j, y in enumerate(b[:upto + 1 - i]):
            out[i + j] += x * y
    return out


@dataclass
class ConsistencyReport:
    degree: int
    engine: list[int]
    product: list[int]
    first_mismatch: int | None
    nonzero: list[tuple[str, bool]]
    vanishing: list[tuple[str, bool]]

    @property
    def series_match(self) -> bool:
        return self.first_mismatch is None

    @property
    def passed(self) -> bool:
        return self.series_match and all(h for _, h in self.nonzero) and all(h for _, h in self.vanishing)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "series": {"engine": self.engine, "product": self.product, "match": self.series_match,
                       "first_mismatch": self.first_mismatch},
            "nonzero": [{"name": n, "holds": h} for n, h in self.nonzero],
            "vanishing": [{"name": n, "holds": h} for n, h in self.vanishing],
            "pass": self.passed,
        }


def _series(gb: GradedBasis, upto: int) -> list[int]:
    return [gb.dim(n) for n in range(upto + 1)]


# degree cap used when B(V_1) or B(K^1) must be computed to the end
FULL_CAP = 64


def check_k1_consistency(space: BraidedSpace, k1: K1Data, gb: GradedBasis,
                         gb1: GradedBasis | None = None, max_degree: int | None = None,
                         gbk: GradedBasis | None = None) -> ConsistencyReport:
    """Compare H(B(V)) with H(B(V_1)) * H(B(K^1)) up to max_degree, and test the generators.

    Without max_degree and with B(V) finite, the whole series is compared,
    including the degrees where B(V) vanishes.
    """
    if gb.status == FINITE:
        upto = gb.top_degree if max_degree is None else max_degree
    else:
        upto = gb.computed_degree if max_degree is None else min(max_degree, gb.computed_degree)
    full = gb.status == FINITE and max_degree is None
    cap = FULL_CAP if full else max(upto, 1)
    if gb1 is None:
        gb1 = compute(restrict(space, k1.v1), cap)
    if gbk is None:
        gbk = compute(k1.diagonal_space(), cap)
    if full and gb1.status == FINITE and gbk.status == FINITE:
        ktop = max(sum(w * g for w, g in zip(k1.weights, gamma)) for (_, gamma) in gbk.multidims())
        upto = max(upto, gb1.top_degree + ktop)
    engine = _series(gb, upto)
    prod = series_product(_series(gb1, upto), weighted_series(gbk, k1.weights, upto), upto)
    mismatch = next((n for n in range(upto + 1) if engine[n] != prod[n]), None)
    nonzero = [(g.name, not gb.is_zero(g.poly)) for g in k1.generators if g.degree <= upto]
    vanish = [(g.name, gb.is_zero(g.poly)) for g in k1.vanishing
              if g.degree <= gb.computed_degree or gb.status == FINITE]
    return ConsistencyReport(upto, engine, prod, mismatch, nonzero, vanish)
