"""Noncommutative polynomials in T(V), the group action, ad_c and skew derivations."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .braided import BraidedError, BraidedSpace, Realization, group_matrix, parse_label
from .field import FieldElement

Word = tuple[int, ...]


class NcPoly:
    """Finitely supported map from words in the basis of V to nonzero coefficients.

    Coefficients are stored as raw field masks.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: BraidedSpace, terms: dict[Word, int] | None = None):
        self.space = space
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    # -- constructors ----------------------------------------------------
    @classmethod
    def gen(cls, space: BraidedSpace, i: int | str) -> "NcPoly":
        if isinstance(i, str):
            i = space.index(i)
        return cls(space, {(i,): 1})

    @classmethod
    def one(cls, space: BraidedSpace) -> "NcPoly":
        return cls(space, {(): 1})

    @classmethod
    def word(cls, space: BraidedSpace, w: Sequence[int], coeff: int = 1) -> "NcPoly":
        return cls(space, {tuple(w): coeff})

    def zero(self) -> "NcPoly":
        return NcPoly(self.space)

    # -- arithmetic -------------------------------------------------------
    def _same(self, other: "NcPoly"):
        if other.space is not self.space:
            raise BraidedError("polynomials over different braided spaces")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) ^ c
        return NcPoly(self.space, t)

    __sub__ = __add__

    def scale(self, s: int | FieldElement) -> "NcPoly":
        s = s.mask if isinstance(s, FieldElement) else s
        if s == 0:
            return self.zero()
        mul = self.space.field.mul
        return NcPoly(self.space, {w: mul(c, s) for w, c in self.terms.items()})

    def __rmul__(self, s):
        if isinstance(s, (int, FieldElement)):
            return self.scale(s)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._same(other)
        mul = self.space.field.mul
        t: dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                t[w] = t.get(w, 0) ^ mul(a, b)
        return NcPoly(self.space, t)

    def __pow__(self, n: int) -> "NcPoly":
        r = NcPoly.one(self.space)
        for _ in range(n):
            r = r * self
        return r

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NcPoly) and other.space is self.space and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    @property
    def degree(self) -> int | None:
        """Common word length, or None if zero or inhomogeneous."""
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    def coeff(self, w: Sequence[int]) -> FieldElement:
        return FieldElement(self.space.field, self.terms.get(tuple(w), 0))

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items())

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NcPoly({format_poly(self)})"


def format_poly(p: NcPoly) -> str:
    if not p.terms:
        return "0"
    names = p.space.label_names()
    parts = []
    for w, c in p.sorted_terms():
        coef = "1" if c == 1 else f"int:{c}"
        word = ".".join(names[i] for i in w) if w else "()"
        parts.append(f"{coef}*{word}")
    return " + ".join(parts)


def parse_poly(space: BraidedSpace, text: str) -> NcPoly:
    text = text.strip()
    if text == "0":
        return NcPoly(space)
    terms: dict[Word, int] = {}
    for part in text.split("+"):
        coef, _, word = part.strip().partition("*")
        c = 1 if coef == "1" else space.field.parse(coef).mask
        w = () if word == "()" else tuple(space.labels.index(parse_label(s)) for s in word.split("."))
        terms[w] = terms.get(w, 0) ^ c
    return NcPoly(space, terms)


def _action(space: BraidedSpace, g, real: Realization | None) -> np.ndarray:
    if isinstance(g, np.ndarray):
        return g
    real = real if real is not None else space.realization
    if real is None:
        raise BraidedError("group action needs a realization")
    return group_matrix(space.field, real, g)


def _columns(A: np.ndarray) -> list[list[tuple[int, int]]]:
    return [[(int(k), int(A[k, j])) for k in np.flatnonzero(A[:, j])] for j in range(A.shape[1])]


def act_words(space: BraidedSpace, A: np.ndarray, terms: Iterable[tuple[Word, int]]) -> dict[Word, int]:
    cols = _columns(A)
    mul = space.field.mul
    out: dict[Word, int] = {}
    for w, c in terms:
        cur = {(): c}
        for j in w:
            nxt = {}
            for u, a in cur.items():
                for k, b in cols[j]:
                    v = u + (k,)
                    nxt[v] = nxt.get(v, 0) ^ mul(a, b)
            cur = nxt
        for u, a in cur.items():
            out[u] = out.get(u, 0) ^ a
    return out


def group_act(real: Realization | None, g, p: NcPoly) -> NcPoly:
    """Act by a group element (exponent vector or action matrix) letter by letter."""
    A = _action(p.space, g, real)
    return NcPoly(p.space, act_words(p.space, A, p.terms.items()))


def gen(space: BraidedSpace, label: int | str) -> NcPoly:
    """The generator x_label; integer labels are basis positions, strings are labels."""
    return NcPoly.gen(space, label)


def _index(space: BraidedSpace, i: int | str) -> int:
    return space.index(i) if isinstance(i, str) else i


def ad_c(i: int | str, p: NcPoly) -> NcPoly:
    """Braided adjoint action of a generator: x_i p + (g_{deg i} . p) x_i."""
    space = p.space
    if space.realization is None:
        raise BraidedError("ad_c needs a realization")
    i = _index(space, i)
    x = NcPoly.gen(space, i)
    return x * p + group_act(None, space.deg_matrix(i), p) * x


def ad_c_word(letters: Sequence[int | str], p: NcPoly) -> NcPoly:
    """ad_c(x_{l1} ... x_{ln}) p = ad_c x_{l1}(... ad_c x_{ln}(p))."""
    for i in reversed(list(letters)):
        p = ad_c(i, p)
    return p


def ad_c_poly(u: NcPoly, p: NcPoly) -> NcPoly:
    """Adjoint action of a polynomial in the generators, extended multiplicatively."""
    out = p.zero()
    for w, c in u.terms.items():
        out = out + ad_c_word(w, p).scale(c)
    return out


def skew_derive(i: int | str, p: NcPoly) -> NcPoly:
    """The skew derivation: d_i(x_j) = delta_ij, d_i(xy) = d_i(x)(g_i . y) + x d_i(y)."""
    space = p.space
    if space.realization is None:
        raise BraidedError("skew derivations need a realization")
    i = _index(space, i)
    A = space.deg_matrix(i)
    out: dict[Word, int] = {}
    for w, c in p.terms.items():
        for pos in range(len(w) - 1, -1, -1):
            if w[pos] != i:
                continue
            prefix = w[:pos]
            for v, a in act_words(space, A, [(w[pos + 1:], c)]).items():
                u = prefix + v
                out[u] = out.get(u, 0) ^ a
    return NcPoly(space, out)
