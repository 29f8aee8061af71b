"""Counterclockwise walks around a dissected polygon and their weight matrices.

A walk from ``i`` to ``j`` picks, at every vertex strictly between them on
the counterclockwise route, one piece incident to that vertex; a piece of
degree ``d`` may be picked at most ``d - 2`` times.

Three flavours of matrix are built from the same walks:

``"arithmetic"``  walk counts ``M_D`` (every weight 1)
``"x"``           piece weights, entries in Z[x1..xm]
``"xq"``          piece and edge weights, entries in Z[x1..xm, q1..qn]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dissection import Dissection
from .polyring import ONE, ZERO, LaurentPoly, Var, VarSet, x

FLAVORS = ("arithmetic", "x", "xq")


def check_flavor(flavor: str) -> str:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    return flavor


@dataclass(frozen=True)
class Walk:
    start: int
    end: int
    pieces: Tuple[int, ...]

    def vertices(self, n: int) -> List[int]:
        """Intermediate vertices, aligned with ``pieces``."""
        return [(self.start + t) % n + 1 for t in range(len(self.pieces))]


def route(n: int, i: int, j: int) -> List[int]:
    """Vertices strictly between ``i`` and ``j`` going counterclockwise."""
    if (i - j) % n == 0:
        return []
    length = (j - i - 1) % n
    return [(i + t - 1) % n + 1 for t in range(1, length + 1)]


def enumerate_walks(d: Dissection, i: int, j: int) -> List[Walk]:
    """All walks from ``i`` to ``j``, lexicographic in piece ids.

    Brute-force backtracking; use :func:`weight_matrix` to build matrices.
    """
    i, j = d.vertex(i), d.vertex(j)
    if i == j:
        return []
    verts = route(d.n, i, j)
    caps = {p: d.degree(p) - 2 for p in range(1, d.m + 1)}
    used = dict.fromkeys(caps, 0)
    out: List[Walk] = []
    chosen: List[int] = []

    def rec(t: int) -> None:
        if t == len(verts):
            out.append(Walk(i, j, tuple(chosen)))
            return
        for p in sorted(d.pieces_at_vertex(verts[t])):
            if used[p] < caps[p]:
                used[p] += 1
                chosen.append(p)
                rec(t + 1)
                chosen.pop()
                used[p] -= 1

    rec(0)
    return out


def edge_product(n: int, i: int, j: int) -> LaurentPoly:
    """``q_i q_{i+1} ... q_{j-1}`` along the counterclockwise route (indices mod n)."""
    steps = (j - i) % n
    exps: Dict[Var, int] = {}
    for t in range(steps):
        exps[("q", (i - 1 + t) % n + 1)] = 1
    return LaurentPoly.monomial(exps)


def walk_weight(w: Walk, d: Dissection, flavor: str = "x") -> LaurentPoly:
    check_flavor(flavor)
    if flavor == "arithmetic":
        return ONE
    exps: Dict[Var, int] = {}
    for p in w.pieces:
        exps[("x", p)] = exps.get(("x", p), 0) + 1
    mono = LaurentPoly.monomial(exps)
    if flavor == "xq":
        mono = mono * edge_product(d.n, w.start, w.end)
    return mono


class WeightMatrix:
    """An n x n matrix of Laurent polynomials attached to a dissection.

    ``W[i, j]`` takes 1-based vertex labels (reduced mod n); ``W.rows`` is
    the plain 0-based list of rows.
    """

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]], dissection: Optional[Dissection],
                 flavor: str):
        self.rows: List[List[LaurentPoly]] = [list(r) for r in rows]
        self.dissection = dissection
        self.flavor = check_flavor(flavor)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentPoly:
        i, j = ij
        n = self.n
        return self.rows[(i - 1) % n][(j - 1) % n]

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightMatrix) and self.rows == other.rows

    def varset(self, names: Optional[Sequence[str]] = None) -> VarSet:
        return VarSet(self.dissection.m, self.n, names)

    def copy(self) -> "WeightMatrix":
        return WeightMatrix(self.rows, self.dissection, self.flavor)

    def format(self, names: Optional[Mapping[Var, str]] = None) -> List[List[str]]:
        return [[p.to_str(names) for p in row] for row in self.rows]

    def __repr__(self) -> str:
        return f"WeightMatrix(n={self.n}, flavor={self.flavor!r})"


def _weight_rows(d: Dissection) -> List[List[LaurentPoly]]:
    """Piece-weighted matrix ``W_D(x)`` by dynamic programming.

    For a fixed start ``i`` the intermediate vertices are processed in
    counterclockwise order.  The state is the usage count of every piece that
    has been picked and is still incident to a later vertex of the route;
    pieces with no later incidence are dropped so equivalent states merge.
    """
    n = d.n
    caps = [0] + [d.degree(p) - 2 for p in range(1, d.m + 1)]
    xs = [None] + [x(p) for p in range(1, d.m + 1)]
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(1, n + 1):
        verts = route(n, i, i - 1)
        # last position on the route at which each piece appears
        last = {}
        for t, v in enumerate(verts):
            for p in d.pieces_at_vertex(v):
                last[p] = t
        rows[i - 1][i % n] = ONE
        states: Dict[Tuple[Tuple[int, int], ...], LaurentPoly] = {(): ONE}
        for t, v in enumerate(verts):
            nxt: Dict[Tuple[Tuple[int, int], ...], LaurentPoly] = {}
            for state, poly in states.items():
                counts = dict(state)
                for p in d.pieces_at_vertex(v):
                    c = counts.get(p, 0)
                    if c >= caps[p]:
                        continue
                    new = dict(counts)
                    new[p] = c + 1
                    key = tuple(sorted((r, k) for r, k in new.items() if last[r] > t))
                    term = poly * xs[p]
                    prev = nxt.get(key)
                    nxt[key] = term if prev is None else prev + term
            states = nxt
            total = ZERO
            for poly in states.values():
                total = total + poly
            rows[i - 1][(v % n)] = total
    return rows


def weight_matrix(d: Dissection, flavor: str = "x") -> WeightMatrix:
    """Walk-count or walk-weight matrix of ``d`` in the requested flavour."""
    check_flavor(flavor)
    rows = _weight_rows(d)
    n = d.n
    if flavor == "arithmetic":
        ones = {("x", p): 1 for p in range(1, d.m + 1)}
        rows = [[e.subs(ones) for e in row] for row in rows]
    elif flavor == "xq":
        rows = [[e * edge_product(n, i + 1, j + 1) if e else e for j, e in enumerate(row)]
                for i, row in enumerate(rows)]
    return WeightMatrix(rows, d, flavor)


def matrix_from_walks(d: Dissection, flavor: str = "x") -> WeightMatrix:
    """Same matrix as :func:`weight_matrix`, summed over enumerated walks."""
    n = d.n
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            total = ZERO
            for w in enumerate_walks(d, i, j):
                total = total + walk_weight(w, d, flavor)
            rows[i - 1][j - 1] = total
    return WeightMatrix(rows, d, flavor)


def all_ones(d: Dissection) -> Dict[Var, LaurentPoly]:
    """Assignment sending every piece and edge variable to 1."""
    out: Dict[Var, LaurentPoly] = {("x", p): ONE for p in range(1, d.m + 1)}
    out.update({("q", j): ONE for j in range(1, d.n + 1)})
    return out


def specialize(w: WeightMatrix, assignment: Mapping[Var, "LaurentPoly | int"],
               flavor: Optional[str] = None) -> WeightMatrix:
    """Entrywise substitution.

    The flavour of the result is inferred unless given: no variables left
    means ``"arithmetic"``, no edge variables means ``"x"``.
    """
    rows = [[e.subs(assignment) for e in row] for row in w.rows]
    if flavor is None:
        seen = set()
        for row in rows:
            for e in row:
                seen |= e.variables()
        if not seen:
            flavor = "arithmetic"
        elif all(v[0] == "x" for v in seen):
            flavor = "x" if w.flavor != "arithmetic" else w.flavor
        else:
            flavor = w.flavor
    return WeightMatrix(rows, w.dissection, flavor)


def full_weight(d: Dissection) -> LaurentPoly:
    """``c = prod_l x_l^(d_l - 2)``, the weight of every walk from i+1 to i."""
    return LaurentPoly.monomial({("x", p): d.degree(p) - 2 for p in range(1, d.m + 1)})


def edge_total(d: Dissection) -> LaurentPoly:
    """``eps = q_1 q_2 ... q_n``."""
    return LaurentPoly.monomial({("q", j): 1 for j in range(1, d.n + 1)})


def matrix_product(a: Sequence[Sequence[LaurentPoly]],
                   b: Sequence[Sequence[LaurentPoly]]) -> List[List[LaurentPoly]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        ai = a[i]
        row = []
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                if ai[k] and b[k][j]:
                    acc = acc + ai[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def polygon_weight_rows(k: int, piece: LaurentPoly, edges: Sequence[LaurentPoly]
                        ) -> List[List[LaurentPoly]]:
    """Weight matrix of an undissected k-gon with arbitrary piece/edge weights.

    Entry (r, c) is ``edges[r] ... edges[c-1] * piece^((c - r - 1) mod k)``.
    """
    if len(edges) != k:
        raise ValueError(f"need {k} edge weights, got {len(edges)}")
    rows = [[ZERO] * k for _ in range(k)]
    for r in range(k):
        acc = ONE
        for step in range(1, k):
            acc = acc * edges[(r + step - 1) % k]
            rows[r][(r + step) % k] = acc * piece ** (step - 1)
    return rows


__all__ = [
    "FLAVORS", "Walk", "WeightMatrix", "enumerate_walks", "walk_weight", "weight_matrix",
    "matrix_from_walks", "specialize", "all_ones", "full_weight", "edge_total", "route",
    "edge_product", "matrix_product", "polygon_weight_rows",
]
