"""Exact arithmetic in GF(2^k).

Elements are bitmasks of polynomials over GF(2) (bit i is the coefficient of
x^i), reduced modulo a fixed irreducible polynomial.  The modulus chosen by
:func:`make_field` is the numerically smallest irreducible of degree k, so
the same k always yields the same field and the same element encodings.

Two layers live here.  :class:`FieldSpec` does arithmetic on raw ``int``
masks (the hot path used by the rest of the package), and
:class:`FieldElement` wraps a mask for the public API.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

MAX_K = 24
_TABLE_K = 16  # log/exp tables up to 2^16 entries


class FieldError(ValueError):
    pass


class NoSuchOrder(FieldError):
    """No element of the requested multiplicative order exists in the field."""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(f: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    k = f.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = 0b10
    h = x
    for _ in range(k // 2):
        h = poly_mod(clmul(h, h), f)
        if poly_gcd(f, h ^ x) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^k) presented as GF(2)[x]/(modulus)."""

    k: int
    modulus: int
    _tables: tuple = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise FieldError(f"extension degree {self.k} outside 1..{MAX_K}")
        if self.modulus.bit_length() - 1 != self.k or not is_irreducible(self.modulus):
            raise FieldError(f"modulus {self.modulus:#b} is not irreducible of degree {self.k}")
        if self.k <= _TABLE_K:
            object.__setattr__(self, "_tables", _log_exp_tables(self.k, self.modulus))

    @property
    def size(self) -> int:
        return 1 << self.k

    @property
    def unit_order(self) -> int:
        """Order of the multiplicative group, 2^k - 1 (always odd)."""
        return (1 << self.k) - 1

    # -- raw mask arithmetic ---------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._tables is not None:
            log, exp = self._tables
            return exp[log[a] + log[b]]
        return poly_mod(clmul(a, b), self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        if self._tables is not None:
            log, exp = self._tables
            return exp[(self.unit_order - log[a]) % self.unit_order]
        return self.pow(a, self.unit_order - 1)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        if a == 0:
            return 1 if n == 0 else 0
        if self._tables is not None:
            log, exp = self._tables
            return exp[(log[a] * n) % self.unit_order]
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero mask."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.unit_order
        for p in _prime_factors(self.unit_order):
            while n % p == 0 and self.pow(a, n // p) == 1:
                n //= p
        return n

    # -- element constructors ---------------------------------------------
    def __call__(self, mask: int) -> "FieldElement":
        return FieldElement(self, mask)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        for m in range(self.size):
            yield FieldElement(self, m)

    def parse(self, text: str) -> "FieldElement":
        """Parse ``int:<mask>`` or ``ord:<M>``."""
        kind, _, val = text.strip().partition(":")
        try:
            n = int(val)
        except ValueError:
            raise FieldError(f"bad field element {text!r}") from None
        if kind == "int":
            return FieldElement(self, n)
        if kind == "ord":
            return element_of_order(self, n)
        raise FieldError(f"bad field element {text!r}")

    def to_json(self) -> dict:
        return {"k": self.k, "modulus_mask": self.modulus}

    def __repr__(self):
        return f"GF(2^{self.k}, modulus={self.modulus:#b})"


def _log_exp_tables(k: int, modulus: int) -> tuple[list[int], list[int]]:
    order = (1 << k) - 1
    # find a generator of the unit group by brute force
    for g in range(1, 1 << k):
        exp = [0] * (2 * order)
        x = 1
        seen = 0
        for i in range(order):
            exp[i] = x
            x = poly_mod(clmul(x, g), modulus)
            if x == 1 and i < order - 1:
                break
            seen = i + 1
        if seen == order:
            break
    for i in range(order, 2 * order):
        exp[i] = exp[i - order]
    log = [0] * (1 << k)
    for i in range(order):
        log[exp[i]] = i
    return log, exp


class FieldElement:
    """An element of a fixed GF(2^k)."""

    __slots__ = ("spec", "mask")

    def __init__(self, spec: FieldSpec, mask: int):
        if not 0 <= mask < spec.size:
            raise FieldError(f"mask {mask} does not fit in GF(2^{spec.k})")
        self.spec = spec
        self.mask = mask

    def _check(self, other) -> int:
        if isinstance(other, int) and other in (0, 1):
            return other
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldError("field mismatch")
        return other.mask

    def __add__(self, other):
        m = self._check(other)
        if m is NotImplemented:
            return m
        return FieldElement(self.spec, self.mask ^ m)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        m = self._check(other)
        if m is NotImplemented:
            return m
        return FieldElement(self.spec, self.spec.mul(self.mask, m))

    __rmul__ = __mul__

    def __truediv__(self, other):
        m = self._check(other)
        if m is NotImplemented:
            return m
        return FieldElement(self.spec, self.spec.mul(self.mask, self.spec.inv(m)))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.mask, n))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.mask))

    def order(self) -> int:
        return self.spec.order(self.mask)

    def frobenius(self) -> "FieldElement":
        return self * self

    def __bool__(self):
        return self.mask != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return other in (0, 1) and self.mask == other
        return isinstance(other, FieldElement) and self.spec == other.spec and self.mask == other.mask

    def __hash__(self):
        return hash((self.spec.k, self.spec.modulus, self.mask))

    def __str__(self):
        return f"int:{self.mask}"

    def __repr__(self):
        return f"FieldElement(int:{self.mask}, k={self.spec.k})"


@functools.lru_cache(maxsize=None)
def make_field(k: int) -> FieldSpec:
    """GF(2^k) with the numerically smallest irreducible modulus of degree k."""
    if not isinstance(k, int) or not 1 <= k <= MAX_K:
        raise FieldError(f"extension degree must be in 1..{MAX_K}, got {k!r}")
    for m in range(1 << k, 1 << (k + 1)):
        if is_irreducible(m):
            return FieldSpec(k, m)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def element_of_order(spec: FieldSpec, M: int) -> FieldElement:
    """Element with the smallest mask whose multiplicative order is exactly M."""
    if M < 1 or spec.unit_order % M:
        raise NoSuchOrder(f"no element of order {M} in GF(2^{spec.k}); enlarge k")
    for m in range(1, spec.size):
        if spec.pow(m, M) == 1 and spec.order(m) == M:
            return FieldElement(spec, m)
    raise AssertionError("unreachable: cyclic group has elements of every dividing order")


def smallest_k_containing_order(M: int) -> int:
    """Least k with M | 2^k - 1, i.e. the multiplicative order of 2 mod M."""
    if M < 1 or M % 2 == 0 or M > (1 << MAX_K) - 1:
        raise FieldError(f"order must be odd and in 1..2^{MAX_K}-1, got {M}")
    if M == 1:
        return 1
    k, r = 1, 2 % M
    while r != 1:
        r = (2 * r) % M
        k += 1
    return k


def auto_k(orders=(), masks=()) -> int:
    """Smallest k holding elements of every listed order and every listed mask."""
    lcm = 1
    for M in orders:
        lcm = math.lcm(lcm, M)
    base = smallest_k_containing_order(lcm)
    need = max([1] + [m.bit_length() for m in masks])
    k = base
    while k < need:
        k += base
    if k > MAX_K:
        raise FieldError(f"parameters need k={k} > {MAX_K}")
    return k
