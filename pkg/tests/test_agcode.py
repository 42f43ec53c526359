import numpy as np
import pytest

from agdec import agcode as ag
from agdec import oracle as orc
from agdec.algebra import Subspace, kernel_raw
from agdec.curve import CurveFn, fn_from_vec


def test_code_create_examples(rs10_4, code9_8, code16_8):
    assert (rs10_4.n, rs10_4.dim, rs10_4.designed_distance) == (10, 4, 7)
    assert (code9_8.n, code9_8.dim, code9_8.designed_distance) == (27, 6, 19)
    assert (code16_8.n, code16_8.dim, code16_8.designed_distance) == (64, 4, 56)


def test_code_create_validation(herm9, line11):
    pts = herm9.affine_points()
    with pytest.raises(ValueError):
        ag.code_create(herm9, pts, 27)
    with pytest.raises(ValueError):
        ag.code_create(herm9, [pts[0], pts[0]], 3)
    with pytest.raises(ValueError):
        ag.code_create(herm9, line11.affine_points(), 3)


def test_rs_is_polynomial_evaluation(rs10_4, line11, f11):
    # encoding the coefficient vector of a polynomial evaluates it
    rng = np.random.default_rng(40)
    msg = rng.integers(0, 11, 4).astype(np.int64)
    word = rs10_4.encode(msg)
    for k, p in enumerate(rs10_4.points):
        val = 0
        for d, c in enumerate(msg.tolist()):
            val = f11.add(val, f11.mul(c, f11.pow_direct(p.x, d)))
        assert word[k] == val


def test_ev_examples(code9_8, herm9):
    one = CurveFn.constant(herm9, 1)
    assert np.array_equal(ag.ev(one, code9_8.points), np.ones(27, dtype=np.int64))
    zero = CurveFn.zero(herm9)
    assert not ag.ev(zero, code9_8.points).any()
    rng = np.random.default_rng(41)
    f = fn_from_vec(herm9, rng.integers(0, 9, code9_8.dim), 8)
    assert code9_8.row_space().contains(ag.ev(f, code9_8.points))


def test_dual_examples(code9_8, rs10_4, f9):
    assert ag.dual(rs10_4).dim == 6
    d = ag.dual(code9_8)
    assert d.dim == 21
    # double dual returns the code
    back = Subspace(f9, kernel_raw(f9, d.basis), 27)
    assert back == code9_8.row_space()
    # full space has zero annihilator
    assert Subspace.full(f9, 5).annihilator().dim == 0


def test_contains_via_dual(code9_8, f9):
    rng = np.random.default_rng(42)
    w = code9_8.encode(rng.integers(0, 9, code9_8.dim))
    assert code9_8.contains(w)
    w2 = w.copy()
    w2[0] = f9.add(w2[0], 1)
    assert not code9_8.contains(w2)


def test_star_product_examples(code9_8, f9, line11, herm9):
    ones = Subspace.span(f9, [np.ones(27, dtype=np.int64)])
    u = code9_8.row_space()
    assert ag.star_product(u, ones) == u
    # degrees add on the line
    rs_a = ag.code_create(line11, line11.affine_points()[:10], 2)
    rs_b = ag.code_create(line11, line11.affine_points()[:10], 4)
    assert ag.star_product(rs_a.row_space(), rs_a.row_space()) == rs_b.row_space()
    # one-point codes multiply like their degrees when degG >= 2g, degG' >= 2g+1
    a = ag.code_create(herm9, herm9.affine_points(), 6)
    b = ag.code_create(herm9, herm9.affine_points(), 7)
    ab = ag.code_create(herm9, herm9.affine_points(), 13)
    assert ag.star_product(a.row_space(), b.row_space()) == ab.row_space()


def test_star_power(line11):
    rs2 = ag.code_create(line11, line11.affine_points()[:10], 2)
    rs6 = ag.code_create(line11, line11.affine_points()[:10], 6)
    assert ag.star_power(rs2.row_space(), 3) == rs6.row_space()
    assert ag.star_power(rs2.row_space(), 1) == rs2.row_space()


def test_star_product_mismatch(f9):
    with pytest.raises(ValueError):
        ag.star_product(Subspace.full(f9, 3), Subspace.full(f9, 4))


def test_adjunction_identity(f9):
    rng = np.random.default_rng(43)
    def inner(x, y):
        return int(f9.matmul_raw(x.reshape(1, -1), y.reshape(-1, 1))[0, 0])
    for _ in range(30):
        a, b, c = (rng.integers(0, 9, 12).astype(np.int64) for _ in range(3))
        assert inner(f9.mul_vec(a, b), c) == inner(a, f9.mul_vec(b, c))


def test_hamming_utilities():
    a = np.array([1, 2, 0, 3])
    b = np.array([1, 0, 0, 3])
    assert ag.hamming(a, a) == 0
    assert ag.hamming(a, b) == 1
    assert ag.weight(b) == len(ag.support(b)) == 2
    with pytest.raises(ValueError):
        ag.hamming(a, np.array([1, 2]))
    rng = np.random.default_rng(44)
    for _ in range(20):
        x, y, z = (rng.integers(0, 3, 8) for _ in range(3))
        assert ag.hamming(x, z) <= ag.hamming(x, y) + ag.hamming(y, z)


def test_min_distance_meets_designed(line11, herm9):
    rs = ag.code_create(line11, line11.affine_points()[:8], 2)  # [8, 3]
    assert orc.min_distance_exhaustive(rs) == 6  # MDS: n - k + 1
    small = ag.code_create(herm9, herm9.affine_points()[:14], 3)
    assert orc.min_distance_exhaustive(small) >= small.designed_distance
    rep = ag.code_create(line11, line11.affine_points()[:8], 0)
    assert orc.min_distance_exhaustive(rep) == 8


def test_vector_round_trip(f9):
    word = np.array([0, 1, 5, 3], dtype=np.int64)
    text = ag.format_vector(f9, word)
    assert np.array_equal(ag.parse_vector(f9, text), word)
