import numpy as np
import pytest

from nicholsgf2 import braided as B
from nicholsgf2.braided import BraidedError, braid_equation_holds, is_invertible, label_text, parse_label
from nicholsgf2.field import element_of_order, make_field


def test_labels_round_trip():
    for lab in (2, 3, 4, 5, 8, 9):
        assert parse_label(label_text(lab)) == lab
    assert label_text(3) == "3/2"
    with pytest.raises(BraidedError):
        parse_label("4/2")


def test_all_families_braid_and_validate(spaces):
    for name, sp in spaces.items():
        assert braid_equation_holds(sp), name
        assert is_invertible(sp), name
        assert B.validate_realization(sp) == [], name


def test_block_braiding_matches_formula(F4, w):
    # c(x_i (x) x_1) = eps x_1 (x) x_i and c(x_i (x) x_2) = (eps x_2 + x_1) (x) x_i
    sp = B.block(w, 2)
    d = sp.dim
    for i in range(2):
        img = sp.braid(i, 0)
        assert img[0, i] == w.mask and np.count_nonzero(img) == 1
        img = sp.braid(i, 1)
        assert img[1, i] == w.mask and img[0, i] == 1 and np.count_nonzero(img) == 2
    assert sp.c.shape == (d * d, d * d)


def test_three_block_is_braided(F2):
    sp = B.block(F2.one, 3)
    assert braid_equation_holds(sp)
    assert sp.dim == 3


def test_lstr_braiding_entries(F4, w):
    sp = B.lstr(w, w, F4.one)
    f = F4.mul
    q12, q21 = w.mask, w.inv().mask
    # c(x3 (x) x2) = q21 (x2 + a x1) (x) x3
    img = sp.braid(2, 1)
    assert img[1, 2] == q21 and img[0, 2] == f(q21, 1)
    # c(x1 (x) x3) = q12 x3 (x) x1
    assert sp.braid(0, 2)[2, 0] == q12
    assert sp.braid(2, 2)[2, 2] == w.mask


def test_pale_is_diagonalizable_but_action_is_not(F4):
    sp = B.pale(F4.one, F4.one)
    # on the block part the braiding is the flip
    for i in range(2):
        for j in range(2):
            img = sp.braid(i, j)
            assert img[j, i] == 1 and np.count_nonzero(img) == 1
    g2 = sp.realization.actions[1]
    assert g2[0, 1] != 0


def test_block_points_hypotheses(F4, w):
    o, z = F4.one, F4.zero
    good = [[o, o, o], [o, o, w], [o, o, o]]
    assert braid_equation_holds(B.block_points(good, [o, o, z]))
    with pytest.raises(BraidedError):
        B.block_points(good, [o, z, z])  # a = (1, 0, 0) excluded
    with pytest.raises(BraidedError):
        B.block_points([[o, w, o], [o, o, o], [o, o, o]], [o, o, o])  # q12 q21 != 1
    with pytest.raises(BraidedError):
        B.block_points([[o, o], [o, o]], [o, o])


def test_poseidon_hypotheses(F4, w):
    o = F4.one
    with pytest.raises(BraidedError):
        B.poseidon([[o] * 3] * 3, [o, F4.zero])
    with pytest.raises(BraidedError):
        B.poseidon([[w, o, o], [o, o, o], [o, o, o]], [o, o])
    sp = B.poseidon([[o, w, o], [w * w, o, o], [o, o, o]], [o, w])
    assert sp.dim == 5 and sp.label_names() == ["1", "3/2", "2", "5/2", "3"]


def test_zero_parameters_rejected(F4):
    with pytest.raises(BraidedError):
        B.lstr(F4.zero, F4.one, F4.one)
    with pytest.raises(BraidedError):
        B.diagonal([[F4.one, F4.zero], [F4.one, F4.one]])


def test_restrict_block_part(spaces):
    sp = spaces["lstr11w"]
    v1 = B.restrict(sp, [0, 1])
    assert v1.dim == 2 and braid_equation_holds(v1)
    assert B.validate_realization(v1) == []
    with pytest.raises(BraidedError):
        B.restrict(sp, [1, 2])  # x2 is not stable without x1


def test_cyclic_block_parity(F2):
    for N, ok in [(1, False), (3, False), (5, False), (2, True), (4, True), (6, True)]:
        sp, real = B.cyclic_block_realization(F2, N)
        assert (B.validate_realization(sp, real) == []) is ok, N


def test_realization_detects_wrong_order(F4, w):
    sp = B.lstr(w, F4.one, F4.one)  # q12 of order 3, block part unipotent
    assert B.validate_realization(sp, sp.realization.with_orders([6, 6])) == []
    bad = B.validate_realization(sp, sp.realization.with_orders([3, 6]))
    assert any(v.invariant == "order" for v in bad)


def test_diagonal_realization(F4, w):
    sp = B.diagonal([[w, F4.one], [w, F4.one]])
    assert sp.braid(0, 1)[1, 0] == 1 and sp.braid(1, 0)[0, 1] == w.mask


def test_parameters_from_different_fields(F2, F4):
    with pytest.raises(BraidedError):
        B.lstr(F2.one, F4.one, F4.one)


def test_lstr_auto_field_for_order_7():
    F = make_field(3)
    sp = B.lstr(element_of_order(F, 7), F.one, F.one)
    assert braid_equation_holds(sp)
