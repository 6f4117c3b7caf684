import pytest

from nicholsgf2 import braided as B
from nicholsgf2.braided import BraidedError
from nicholsgf2.field import auto_k, element_of_order, make_field
from nicholsgf2.nichols import FINITE, compute
from nicholsgf2.splitting import (
    DynkinDiagram, block_points_J, check_k1_consistency, displayed_diagram, dynkin, k1_for, lstr_count,
    poseidon_A, poseidon_b, poseidon_p, series_product, weighted_series,
)


def test_lstr_count(F4, w):
    assert [lstr_count(e) for e in (F4.zero, F4.one, w)] == [1, 3, 4]


@pytest.mark.parametrize("name, n, dimk", [("lstr111", 3, 8), ("lstr11w", 4, 16), ("pale1", 2, 4),
                                           ("palew", 2, 27), ("poseidon", 9, 512)])
def test_k1_generators_and_dim_k(spaces, name, n, dimk):
    k1 = k1_for(spaces[name])
    assert len(k1.generators) == n
    gbk = compute(k1.diagonal_space(), 64)
    assert gbk.status == FINITE and gbk.total == dimk


def test_lstr_q_matrix_formula(F4, w):
    sp = B.lstr(w, w, w)
    k1 = k1_for(sp)
    q21 = w.inv()
    for i in range(4):
        for j in range(4):
            assert k1.q_matrix[i][j] == q21 ** (j - i) * w


@pytest.mark.parametrize("name", ["lstr111", "lstr11w", "pale1", "palew"])
def test_factorization_full(spaces, name):
    sp = spaces[name]
    rep = check_k1_consistency(sp, k1_for(sp), compute(sp, 40))
    assert rep.passed, rep.to_json()
    assert rep.engine == rep.product


def test_factorization_poseidon_prefix(spaces):
    sp = spaces["poseidon"]
    rep = check_k1_consistency(sp, k1_for(sp), compute(sp, 8), max_degree=8)
    assert rep.passed and rep.degree == 8


def test_factorization_detects_wrong_weights(spaces):
    sp = spaces["lstr11w"]
    k1 = k1_for(sp)
    k1.generators[1].degree = 3  # pretend z1 lives in degree 3
    rep = check_k1_consistency(sp, k1, compute(sp, 40))
    assert not rep.series_match


def test_series_helpers():
    assert series_product([1, 1], [1, 2, 1], 3) == [1, 3, 3, 1]
    sp = B.diagonal([[make_field(1).one]])
    gb = compute(sp, 5)
    assert weighted_series(gb, [3], 6) == [1, 0, 0, 1, 0, 0, 0]


def test_block_points_J(F4, w):
    o, z = F4.one, F4.zero
    assert block_points_J([o, o, z]) == [(2, 0), (2, 1), (2, 2), (3, 0)]
    assert block_points_J([o, w, o]) == [(2, 0), (2, 1), (2, 2), (2, 3), (3, 0), (3, 1), (3, 2)]


def test_poseidon_index_set(F4, w):
    o = F4.one
    assert poseidon_b([o, w]) == [2, 3]
    A = poseidon_A([o, w])
    assert len(A) == 12 and A == sorted(A)


def test_poseidon_p_symmetric_product(F4, w):
    o = F4.one
    q = [[o, w, o], [w * w, o, w], [o, w * w, o]]
    A = poseidon_A([o, o])
    for m in A:
        assert poseidon_p(q, m, m) == o
        for n in A:
            assert poseidon_p(q, m, n) * poseidon_p(q, n, m) == o


def test_dynkin_labels(F4, w):
    o = F4.one
    d = dynkin([[w, o], [w, w]])
    assert d.vertices == [w, w] and d.edges == {(0, 1): w}
    assert d.is_connected()
    d2 = dynkin([[o, o], [o, o]])
    assert d2.edges == {} and d2.components == [[0], [1]]


def test_dynkin_zero_entry_rejected(F4):
    with pytest.raises(BraidedError):
        dynkin([[F4.one, F4.zero], [F4.one, F4.one]])


def test_isomorphism_respects_labels(F4, w):
    a = DynkinDiagram([w, w], {(0, 1): w * w})
    b = DynkinDiagram([w, w], {(0, 1): w * w})
    c = DynkinDiagram([w, w], {(0, 1): w})
    assert a.isomorphic(b) and not a.isomorphic(c)
    big = DynkinDiagram([w, w, F4.one], {(0, 1): w * w})
    assert big.contains(a) and not a.contains(big)


@pytest.mark.parametrize("M", [3, 5, 7])
@pytest.mark.parametrize("amode", ["1", "w"])
def test_lstr_obstruction_diagram(M, amode):
    F = make_field(auto_k([M, 3]) if amode == "w" else auto_k([M]))
    a = F.one if amode == "1" else element_of_order(F, 3)
    q22 = element_of_order(F, M)
    sp = B.lstr(F.one, q22, a)
    d = dynkin(k1_for(sp).q_matrix)
    shown = displayed_diagram(sp)
    assert d.isomorphic(shown)
    assert len(shown.vertices) == (3 if amode == "1" else 4)
    assert all(e == q22 * q22 for e in shown.edges.values())


def test_block_points_star(F4, w):
    o, z = F4.one, F4.zero
    sp = B.block_points([[o, o, o], [o, o, w], [o, o, o]], [o, o, z])
    d = dynkin(k1_for(sp).q_matrix)
    assert d.is_connected() and d.isomorphic(displayed_diagram(sp))
    with pytest.raises(BraidedError):
        displayed_diagram(B.block_points([[o, o, o], [o, o, w], [o, o, o]], [o, o, o]))


def test_poseidon_totally_disconnected(spaces):
    sp = spaces["poseidon"]
    d = dynkin(k1_for(sp).q_matrix)
    assert d.edges == {} and d.isomorphic(displayed_diagram(sp))


def test_pale_diagrams(spaces, w):
    for name, connected in (("pale1", False), ("palew", True)):
        sp = spaces[name]
        d = dynkin(k1_for(sp).q_matrix)
        assert d.is_connected() is connected
        assert d.isomorphic(displayed_diagram(sp))


def test_unknown_family(spaces):
    with pytest.raises(BraidedError):
        k1_for(spaces["jordan"])
