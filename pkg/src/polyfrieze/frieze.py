"""Generalised frieze patterns, their 2x2 minors and zig-zag sequences.

Row ``r`` of the frieze of a weight matrix ``W`` holds the entries
``W[i, i + r]`` for ``i = 1..n``; row 0 is zero, row 1 holds ones (or the
edge weights ``q_i``).  Adjacent rows interlace, so the 2x2 "diamonds" are
the minors ``d(e, f)`` of ``W`` for pairs of boundary edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .dissection import Dissection
from .polyring import LaurentPoly, Var
from .walks import WeightMatrix, check_flavor, edge_total, full_weight, route


@dataclass
class FriezePattern:
    n: int
    rows: List[List[LaurentPoly]]
    flavor: str

    def entry(self, r: int, i: int) -> LaurentPoly:
        """Row ``r``, column ``i`` (1-based, periodic)."""
        return self.rows[r][(i - 1) % self.n]

    def render(self, periods: int = 2, names: Optional[Mapping[Var, str]] = None,
               show_zero_row: bool = False, mark_fundamental: bool = True,
               max_width: Optional[int] = None) -> str:
        """Diamond-interlaced text rendering.

        Entries of one period (columns ``1..n``) are bracketed when
        ``mark_fundamental`` is set.  Entries longer than ``max_width`` are
        replaced by labels listed in a legend below the pattern.
        """
        first = 0 if show_zero_row else 1
        legend: Dict[str, str] = {}
        labels: Dict[str, str] = {}

        def text(p: LaurentPoly) -> str:
            s = p.to_str(names)
            if max_width is not None and len(s) > max_width:
                if s not in labels:
                    labels[s] = f"<{len(labels) + 1}>"
                    legend[labels[s]] = s
                return labels[s]
            return s

        cells = {}
        for r in range(first, self.n):
            for i in range(1, periods * self.n + 1):
                s = text(self.entry(r, i))
                if mark_fundamental and i <= self.n:
                    s = f"[{s}]"
                cells[r, i] = s
        # half-cell grid: row r, column i is centred on half-step 2(i-1) + r
        half = max(len(s) for s in cells.values()) // 2 + 1
        lines = []
        for r in range(first, self.n):
            line = ""
            for i in range(1, periods * self.n + 1):
                s = cells[r, i]
                centre = (2 * (i - 1) + r + 1) * half
                line = line.ljust(centre - len(s) // 2) + s
            lines.append(line)
        if legend:
            lines.append("")
            lines.extend(f"{lab} = {s}" for lab, s in legend.items())
        return "\n".join(lines)

    def latex(self, periods: int = 2, names: Optional[Mapping[Var, str]] = None,
              show_zero_row: bool = False) -> str:
        first = 0 if show_zero_row else 1
        total = 2 * periods * self.n + self.n
        lines = [r"\begin{array}{" + "c" * total + "}"]
        for r in range(first, self.n):
            slots = [""] * total
            for i in range(1, periods * self.n + 1):
                slots[2 * (i - 1) + r] = self.entry(r, i).to_str(names).replace("*", " ")
            lines.append(" & ".join(slots) + r" \\")
        lines.append(r"\end{array}")
        return "\n".join(lines)


def build_frieze(w: WeightMatrix) -> FriezePattern:
    n = w.n
    rows = [[w[i, i + r] for i in range(1, n + 1)] for r in range(n)]
    return FriezePattern(n, rows, w.flavor)


def minor(w: WeightMatrix, e: int, f: int) -> LaurentPoly:
    """``d(e, f)``: rows ``e, e+1`` and columns ``f, f+1`` of ``w`` (mod n)."""
    i, j = e, f
    return w[i, j] * w[i + 1, j + 1] - w[i, j + 1] * w[i + 1, j]


@dataclass(frozen=True)
class ZigZag:
    """Certificate for a nonzero minor.

    ``sequence`` lists ``e = z_0, z_1, ..., z_s = f`` as vertex pairs,
    ``pieces[k]`` is the piece holding ``z_k`` and ``z_(k+1)``.
    """

    e: int
    f: int
    sequence: Tuple[Tuple[int, int], ...]
    pieces: Tuple[int, ...]
    zig_pieces: Tuple[int, ...]

    @property
    def diagonals(self) -> Tuple[Tuple[int, int], ...]:
        return self.sequence[1:-1]

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "f": self.f,
            "sequence": [list(z) for z in self.sequence],
            "diagonals": [list(z) for z in self.diagonals],
            "pieces": list(self.pieces),
            "zig_pieces": list(self.zig_pieces),
        }


def _tree_path(d: Dissection, start: int, goal: int) -> Tuple[List[int], List[Tuple[int, int]]]:
    adj = d.dual_tree()
    parent: Dict[int, Optional[Tuple[int, Tuple[int, int]]]] = {start: None}
    todo = deque([start])
    while todo:
        p = todo.popleft()
        if p == goal:
            break
        for nb, dg in adj[p]:
            if nb not in parent:
                parent[nb] = (p, dg)
                todo.append(nb)
    pieces, diags = [goal], []
    while parent[pieces[-1]] is not None:
        prev, dg = parent[pieces[-1]]
        diags.append(dg)
        pieces.append(prev)
    return pieces[::-1], diags[::-1]


def zig_pieces(d: Dissection, e: int, f: int) -> Tuple[int, ...]:
    """Pieces with at most one vertex on the counterclockwise route ``f+1 .. e``."""
    i, j = d.vertex(e), d.vertex(f)
    arc = {d.vertex(j + 1 + t) for t in range((i - j - 1) % d.n + 1)}
    return tuple(p for p in range(1, d.m + 1) if len(arc.intersection(d.piece(p))) <= 1)


def find_zigzag(d: Dissection, e: int, f: int) -> Optional[ZigZag]:
    """Zig-zag sequence from boundary edge ``e`` to ``f``, or ``None``.

    The pieces of a zig-zag sequence are pairwise distinct and consecutive
    ones share a diagonal, so the only candidate is the dual-tree path
    between the pieces holding ``e`` and ``f``; only the incidence of
    consecutive segments has to be checked.
    """
    e, f = d.vertex(e), d.vertex(f)
    if e == f:
        raise ValueError("zig-zag sequences need two different edges")
    pieces, diags = _tree_path(d, d.piece_of_edge(e), d.piece_of_edge(f))
    seq = [(e, d.vertex(e + 1))] + list(diags) + [(f, d.vertex(f + 1))]
    for a, b in zip(seq, seq[1:]):
        if not set(a) & set(b):
            return None
    return ZigZag(e, f, tuple(seq), tuple(pieces), zig_pieces(d, e, f))


def minor_formula(d: Dissection, e: int, f: int, flavor: str = "xq") -> LaurentPoly:
    """The minor ``d(e, f)`` predicted from the zig-zag structure (``e != f``)."""
    check_flavor(flavor)
    e, f = d.vertex(e), d.vertex(f)
    if e == f:
        raise ValueError("use minor() for e == f (the value is -eps*c)")
    z = find_zigzag(d, e, f)
    if z is None:
        return LaurentPoly.const(0)
    exps: Dict[Var, int] = {}
    if flavor == "xq":
        exps[("q", e)] = 1
        exps[("q", f)] = exps.get(("q", f), 0) + 1
        for k in route(d.n, e, f):
            exps[("q", k)] = exps.get(("q", k), 0) + 2
    if flavor != "arithmetic":
        for p in z.zig_pieces:
            if d.degree(p) > 2:
                exps[("x", p)] = 2 * (d.degree(p) - 2)
    return LaurentPoly.monomial(exps)


def diagonal_minor(d: Dissection, flavor: str = "xq") -> LaurentPoly:
    """``d(e, e) = -eps * c`` (specialised to the flavour)."""
    check_flavor(flavor)
    if flavor == "arithmetic":
        return LaurentPoly.const(-1)
    val = full_weight(d)
    if flavor == "xq":
        val = val * edge_total(d)
    return -val


def minor_table(d: Dissection, w: WeightMatrix) -> List[dict]:
    """All ordered edge pairs with minor, prediction and certificate."""
    out = []
    for e in range(1, d.n + 1):
        for f in range(1, d.n + 1):
            value = minor(w, e, f)
            if e == f:
                predicted, z = diagonal_minor(d, w.flavor), None
            else:
                predicted = minor_formula(d, e, f, w.flavor)
                z = find_zigzag(d, e, f)
            out.append({"e": e, "f": f, "minor": value, "formula": predicted, "zigzag": z})
    return out
