import random

import pytest
from hypothesis import given, settings, strategies as st

from nicholsgf2.field import (
    FieldError, NoSuchOrder, auto_k, clmul, element_of_order, is_irreducible, make_field,
    smallest_k_containing_order,
)


@pytest.mark.parametrize("k, modulus", [(1, 0b10), (2, 0b111), (3, 0b1011), (4, 0b10011), (6, 0b1000011)])
def test_smallest_irreducible_modulus(k, modulus):
    assert make_field(k).modulus == modulus


def test_is_irreducible_small():
    assert is_irreducible(0b111)
    assert not is_irreducible(0b101)  # (x+1)^2


@st.composite
def triples(draw):
    k = draw(st.integers(1, 9))
    n = 1 << k
    return k, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))


@given(triples())
@settings(max_examples=200, deadline=None)
def test_field_axioms(t):
    k, a, b, c = t
    F = make_field(k)
    x, y, z = F(a), F(b), F(c)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + x == F.zero
    if x:
        assert x * x.inv() == F.one
        assert (x / x) == F.one


@pytest.mark.parametrize("k", [1, 2, 3, 4, 8, 12, 17])
def test_table_and_schoolbook_agree(k):
    F = make_field(k)
    rng = random.Random(k)
    for _ in range(200):
        a, b = rng.randrange(1 << k), rng.randrange(1 << k)
        r = clmul(a, b)
        while r.bit_length() > k:
            r ^= F.modulus << (r.bit_length() - 1 - k)
        assert F.mul(a, b) == r


def test_frobenius_is_squaring(F4, w):
    assert w.frobenius() == w * w
    assert w.frobenius().frobenius() == w


def test_element_of_order():
    F = make_field(6)
    for M in (1, 3, 7, 9, 21, 63):
        e = element_of_order(F, M)
        assert e.order() == M
    with pytest.raises(NoSuchOrder):
        element_of_order(F, 5)


@pytest.mark.parametrize("M, k", [(1, 1), (3, 2), (7, 3), (5, 4), (9, 6), (15, 4), (21, 6), (63, 6)])
def test_smallest_k_containing_order(M, k):
    assert smallest_k_containing_order(M) == k


def test_even_order_rejected():
    with pytest.raises(FieldError):
        smallest_k_containing_order(6)


def test_auto_k_combines_orders_and_masks():
    assert auto_k([3, 7]) == 6
    assert auto_k([3], [5]) == 4  # mask 5 needs 3 bits; next multiple of 2 is 4
    assert auto_k([], [1]) == 1


def test_parse_grammar(F4):
    assert F4.parse("int:3").mask == 3
    assert F4.parse("ord:3").order() == 3
    assert str(F4.parse("int:2")) == "int:2"
    for bad in ("3", "x:1", "int:abc", "ord:5"):
        with pytest.raises(FieldError):
            F4.parse(bad)


def test_mixing_fields_rejected(F2, F4):
    with pytest.raises(FieldError):
        F2.one * F4.one


def test_k_out_of_range():
    with pytest.raises(FieldError):
        make_field(0)
    with pytest.raises(FieldError):
        make_field(25)
