import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyfrieze.dissection import build, enumerate_dissections, random_dissection
from polyfrieze.normalform import (CapError, ComplementContext, Elimination,
                                   check_complementary_symmetry, complement_phi, complement_psi,
                                   det_expand, det_formula, diagonalize, diagonalize_trivial,
                                   expected_diagonal, geometric_sum, int_det, int_matmul,
                                   piece_factor, reduce_unit_block, replay, same_multiset,
                                   smith_normal_form, theorem_display, toeplitz_det_formula,
                                   toeplitz_matrix, toeplitz_via_polygon, unit_block_matrix)
from polyfrieze.normalform.smith import unimodular_inverse
from polyfrieze.polyring import ONE, ZERO, LaurentPoly, parse, q, x
from polyfrieze.walks import weight_matrix

HEPTAGON = build(7, [(2, 7), (3, 6), (4, 6)])


# complementing maps ----------------------------------------------------------

def test_phi_on_heptagon_entries():
    ctx = ComplementContext(HEPTAGON)
    w = weight_matrix(HEPTAGON, "x")
    assert ctx.phi(w[1, 3]) == w[3, 1]
    assert complement_phi(ctx, ONE) == ctx.c
    assert complement_psi(ctx, ONE) == ctx.c * ctx.eps


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 10), st.integers(0, 10**6), st.integers(0, 10**6))
def test_maps_are_involutions(n, seed, pick):
    d = random_dissection(n, seed)
    ctx = ComplementContext(d)
    w = weight_matrix(d, "xq")
    rng = random.Random(pick)
    i, j = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
    assert ctx.psi(ctx.psi(w[i, j])) == w[i, j]
    wx = weight_matrix(d, "x")
    assert ctx.phi(ctx.phi(wx[i, j])) == wx[i, j]


def test_out_of_cap_terms_raise():
    ctx = ComplementContext(HEPTAGON)
    with pytest.raises(CapError):
        ctx.phi(x(1) ** 2)
    with pytest.raises(CapError):
        ctx.phi(q(1))
    with pytest.raises(CapError):
        ctx.psi(q(1) ** 2)
    with pytest.raises(CapError):
        ctx.psi(x(9))


def test_symmetry_detects_corruption():
    w = weight_matrix(HEPTAGON, "xq")
    assert check_complementary_symmetry(w) == (True, None)
    w.rows[2][4] = w.rows[2][4] + x(1)
    ok, where = check_complementary_symmetry(w)
    assert not ok and where == (3, 5)
    m = weight_matrix(HEPTAGON, "arithmetic")
    m.rows[0][0] = ONE
    assert check_complementary_symmetry(m) == (False, (1, 1))


# determinants --------------------------------------------------------------

def test_geometric_sum_and_factors():
    assert geometric_sum(x(1), 0) == 1
    assert geometric_sum(x(1), 2) == 1 + x(1) + x(1) ** 2
    assert piece_factor(HEPTAGON, 2, "arithmetic") == 3
    assert piece_factor(HEPTAGON, 1, "x") == parse("1 + x1^3*x2^2*x3*x4")


def test_det_expand_small_cases():
    assert det_expand([]) == 1
    assert det_expand([[x(1)]]) == x(1)
    assert det_expand([[x(1), x(2)], [q(1), q(2)]]) == x(1) * q(2) - x(2) * q(1)
    assert det_expand([[ONE, ONE], [ONE, ONE]]) == 0
    with pytest.raises(ValueError):
        det_expand([[ONE, ONE]])
    with pytest.raises(ValueError):
        det_expand([[ONE]], guard=0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=16, max_size=16))
def test_det_expand_matches_bareiss(entries):
    a = [entries[4 * i:4 * i + 4] for i in range(4)]
    rows = [[LaurentPoly.const(v) for v in row] for row in a]
    assert det_expand(rows) == int_det(a)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_det_formula_all_flavours(n):
    for d in enumerate_dissections(n):
        for flavor in ("arithmetic", "x", "xq"):
            assert det_expand(weight_matrix(d, flavor)) == det_formula(d, flavor)


def test_toeplitz_examples():
    # d = 5, m = 2: a 3 x 3 matrix with determinant q x^2 (1 + q x^5)
    T = toeplitz_matrix(5, 2)
    assert T == toeplitz_via_polygon(5, 2)
    assert det_expand(T) == toeplitz_det_formula(5, 2) == q(1) * x(1) ** 2 * (1 + q(1) * x(1) ** 5)
    with pytest.raises(ValueError):
        toeplitz_matrix(5, 4)


# diagonal forms ---------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_diagonalize_exhaustive(n):
    for d in enumerate_dissections(n):
        form = diagonalize(d)
        assert form.verify()
        assert form.diagonal() == expected_diagonal(d)


def test_diagonalize_heptagon_dets():
    form = diagonalize(HEPTAGON)
    eps = parse("q1*q2*q3*q4*q5*q6*q7")
    assert form.det_P == -eps.inverse()
    assert form.det_Q == -1
    # the recorded log replays to the same transforms
    again = replay(form.W, form.log)
    assert again.M == form.D and again.P == form.P and again.Q == form.Q


def test_diagonalize_random_larger():
    for seed in range(3):
        d = random_dissection(11, seed)
        form = diagonalize(d)
        assert form.verify() and form.diagonal() == expected_diagonal(d)


def test_trivial_polygon_explicit_edges():
    form = diagonalize_trivial(4, qs=[ONE, ONE, ONE, q(1)], piece=x(1))
    assert form.verify()
    with pytest.raises(ValueError):
        diagonalize_trivial(4, qs=[ONE, ONE, ONE, 1 + q(1)])
    with pytest.raises(ValueError):
        diagonalize_trivial(4, qs=[ONE])
    with pytest.raises(ValueError):
        diagonalize_trivial(2)


def test_unit_block():
    y = q(1)
    U = unit_block_matrix(y, [x(1), x(2)])
    assert U[0] == [1 + y, x(1) * y, x(1) * x(2) * y]
    assert U[2][0] == (x(1) * x(2)).inverse()
    assert det_expand(U) == geometric_sum(y, 3)
    assert reduce_unit_block(3, y, [x(1), x(2)]).verify()
    with pytest.raises(ValueError):
        reduce_unit_block(3, y, [x(1)])
    with pytest.raises(ValueError):
        reduce_unit_block(2, y, [1 + x(1)])
    with pytest.raises(ValueError):
        reduce_unit_block(0, y, [])


def test_elimination_tracks_determinants():
    el = Elimination([[x(1), ZERO], [ZERO, ONE]])
    el.scale_row(0, -q(1))
    el.add_col(1, 0, x(2))
    el.permute_rows([1, 0])
    assert el.det_P == q(1) and el.det_Q == 1
    with pytest.raises(ValueError):
        el.scale_row(0, 1 + x(1))


# Smith forms -----------------------------------------------------------------

def test_heptagon_smith():
    M = [[e.constant_value() for e in row] for row in weight_matrix(HEPTAGON, "arithmetic").rows]
    res = smith_normal_form(M, display=theorem_display(HEPTAGON.type, 7))
    assert res.invariant_factors == [1, 1, 1, 1, 2, 2, 6]
    assert same_multiset(res.display_diagonal, [3, 2, 2, 2, 1, 1, 1])
    assert int_matmul(int_matmul(res.U_display, M), res.V_display) == res.D_display
    assert int_det(res.U_display) == 1 and int_det(res.V_display) == 1
    with pytest.raises(ValueError):
        smith_normal_form(M, display=[24, 1, 1, 1, 1, 1, 2])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_properties(r, c, data):
    A = [[data.draw(st.integers(-6, 6)) for _ in range(c)] for _ in range(r)]
    res = smith_normal_form(A)
    S = res.S
    assert int_matmul(int_matmul(res.U, A), res.V) == S
    assert abs(int_det(res.U)) == 1 and abs(int_det(res.V)) == 1
    diag = [S[i][i] for i in range(min(r, c))]
    assert all(S[i][j] == 0 for i in range(r) for j in range(c) if i != j)
    assert all(v >= 0 for v in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_unimodular_inverse():
    a = [[2, 1], [1, 1]]
    assert int_matmul(a, unimodular_inverse(a)) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        unimodular_inverse([[2, 0], [0, 1]])


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_theorem_display_is_equivalent(n):
    for d in enumerate_dissections(n):
        M = [[e.constant_value() for e in row] for row in weight_matrix(d, "arithmetic").rows]
        res = smith_normal_form(M, display=theorem_display(d.type, n))
        assert int_matmul(int_matmul(res.U_display, M), res.V_display) == res.D_display
