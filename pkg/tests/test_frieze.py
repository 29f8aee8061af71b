import pytest

from polyfrieze.dissection import build, enumerate_dissections
from polyfrieze.frieze import (ZigZag, build_frieze, diagonal_minor, find_zigzag, minor,
                               minor_formula, minor_table, zig_pieces)
from polyfrieze.normalform import ComplementContext
from polyfrieze.polyring import parse
from polyfrieze.walks import all_ones, specialize, weight_matrix

PENTAGON = build(5, [(2, 4), (2, 5)])
# names used by the frieze display: a = {1,2,5}, b = {2,4,5}, c = {2,3,4}
ABC = {"a": ("x", 1), "c": ("x", 2), "b": ("x", 3)}


def _cyclic_from(row, start):
    n = len(row)
    return [row[(start - 1 + t) % n] for t in range(n)]


def test_arithmetic_pentagon_frieze():
    fr = build_frieze(weight_matrix(PENTAGON, "arithmetic"))
    assert fr.rows[0] == [0] * 5
    assert fr.rows[1] == [1] * 5
    # the printed pattern starts its second and third rows at vertex 5
    assert _cyclic_from(fr.rows[2], 5) == [1, 3, 1, 2, 2]
    assert _cyclic_from(fr.rows[3], 5) == [2, 2, 1, 3, 1]
    assert fr.rows[4] == [1] * 5


def test_polynomial_pentagon_frieze():
    w = specialize(weight_matrix(PENTAGON, "xq"), {("q", j): 1 for j in range(1, 6)})
    fr = build_frieze(w)
    row2 = [parse(s, ABC) for s in ["a", "a+b+c", "c", "b+c", "a+b"]]
    row3 = [parse(s, ABC) for s in ["a b", "a(b+c)", "(a+b)c", "b c", "a(b+c)+b c"]]
    assert _cyclic_from(fr.rows[2], 5) == row2
    assert _cyclic_from(fr.rows[3], 4) == row3
    assert fr.rows[4] == [parse("a b c", ABC)] * 5


def test_triangle_frieze():
    fr = build_frieze(weight_matrix(build(3), "arithmetic"))
    assert fr.rows == [[0, 0, 0], [1, 1, 1], [1, 1, 1]]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_translation_symmetry(n):
    for d in enumerate_dissections(n):
        fr = build_frieze(weight_matrix(d, "x"))
        ctx = ComplementContext(d)
        for r in range(1, n):
            for i in range(1, n + 1):
                assert ctx.phi(fr.entry(r, i)) == fr.entry(n - r, i + r)


def test_rendering():
    fr = build_frieze(weight_matrix(PENTAGON, "arithmetic"))
    text = fr.render()
    lines = text.splitlines()
    assert len(lines) == 4
    assert lines[1].split() == ["[3]", "[1]", "[2]", "[2]", "[1]", "3", "1", "2", "2", "1"]
    assert len(fr.render(show_zero_row=True).splitlines()) == 5
    assert "[" not in fr.render(mark_fundamental=False)
    # the diamond layout shifts every row by half a cell
    starts = [len(ln) - len(ln.lstrip()) for ln in lines]
    assert starts == sorted(starts) and len(set(starts)) == 4
    latex = fr.latex(periods=1)
    assert latex.startswith(r"\begin{array}") and latex.count(r"\\") == 4


def test_render_legend():
    fr = build_frieze(weight_matrix(PENTAGON, "xq"))
    text = fr.render(max_width=6)
    assert "<1> = " in text
    body, legend = text.split("\n\n")
    assert all(len(tok) <= 8 for tok in body.split())


def test_pentagon_minors():
    w = weight_matrix(PENTAGON, "xq")
    # canonical ids: piece 2 = {2,3,4} holds f, piece 3 = {2,4,5}
    assert minor(w, 1, 3) == parse("q1*q3*q2^2*x2^2")
    assert minor(w, 3, 1) == parse("q1*q3*q4^2*q5^2*x1^2*x3^2")
    assert minor(w, 2, 2) == diagonal_minor(PENTAGON) == parse("-x1*x2*x3*q1*q2*q3*q4*q5")


def test_pentagon_zigzag():
    z = find_zigzag(PENTAGON, 1, 3)
    assert isinstance(z, ZigZag)
    assert z.sequence == ((1, 2), (2, 5), (2, 4), (3, 4))
    assert z.diagonals == ((2, 5), (2, 4))
    assert z.zig_pieces == (2,)
    back = find_zigzag(PENTAGON, 3, 1)
    assert back.sequence == tuple(reversed(z.sequence))
    assert back.zig_pieces == (1, 3)
    assert z.to_json()["diagonals"] == [[2, 5], [2, 4]]


def test_zigzag_edge_cases():
    square = build(4)
    # adjacent edges of one piece: the s = 0 sequence
    z = find_zigzag(square, 1, 2)
    assert z.sequence == ((1, 2), (2, 3)) and z.diagonals == ()
    # opposite edges of one piece are not incident
    assert find_zigzag(square, 1, 3) is None
    assert minor_formula(square, 1, 3) == 0
    with pytest.raises(ValueError):
        find_zigzag(square, 2, 6)
    with pytest.raises(ValueError):
        minor_formula(square, 1, 1)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_minor_theorem(n):
    for d in enumerate_dissections(n):
        w = weight_matrix(d, "xq")
        for row in minor_table(d, w):
            assert row["minor"] == row["formula"]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_zigzag_properties(n):
    for d in enumerate_dissections(n):
        m = specialize(weight_matrix(d, "xq"), all_ones(d))
        for e in range(1, n + 1):
            for f in range(1, n + 1):
                if e == f:
                    continue
                z = find_zigzag(d, e, f)
                assert (z is None) == (find_zigzag(d, f, e) is None)
                assert minor(m, e, f) == (0 if z is None else 1)
                if z is not None:
                    assert len(set(z.pieces)) == len(z.pieces)
                    for k, p in enumerate(z.pieces):
                        assert set(z.sequence[k]) | set(z.sequence[k + 1]) <= set(d.piece(p))
                    zig = set(zig_pieces(d, e, f))
                    assert zig <= set(range(1, d.m + 1))


def test_minor_formula_flavours():
    assert minor_formula(PENTAGON, 1, 3, "x") == parse("x2^2")
    assert minor_formula(PENTAGON, 1, 3, "arithmetic") == 1
    assert diagonal_minor(PENTAGON, "arithmetic") == -1
    assert diagonal_minor(PENTAGON, "x") == parse("-x1*x2*x3")
