"""Explicit diagonal forms ``P W Q = D`` over the Laurent polynomial ring.

Every transformation is an elementary operation applied to a working matrix
and simultaneously to ``P`` (row operations) or ``Q`` (column operations).
Operations are logged so a run can be replayed or inspected.  Only units
(``+-`` monomials) are ever inverted.

The reduction of a dissected polygon peels off one boundary piece at a time.
The boundary piece is separated into its own block by row and column
operations; the remaining polygon is again a weight matrix, with the cut
diagonal carrying the product of the peeled edge weights.  An undissected
polygon and every separated block are then reduced by the elimination
patterns implemented in :func:`_polygon_ops` and :func:`_unit_block_ops`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..dissection import Dissection
from ..polyring import ONE, ZERO, LaurentPoly, q, x
from ..walks import (WeightMatrix, edge_total, full_weight, matrix_product,
                     polygon_weight_rows, weight_matrix)
from .determinant import geometric_sum, piece_factor


@dataclass(frozen=True)
class Op:
    """One elementary operation.

    kinds: ``add_row`` (row[target] += factor * row[source]), ``add_col``,
    ``scale_row``/``scale_col`` (by a unit ``factor``), ``perm_rows``/
    ``perm_cols`` (``perm[k]`` is the old index placed at position k).
    """

    kind: str
    target: int = -1
    source: int = -1
    factor: Optional[LaurentPoly] = None
    perm: Tuple[int, ...] = ()


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        t = s
        while not seen[t]:
            seen[t] = True
            t = perm[t]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def identity(n: int) -> List[List[LaurentPoly]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


class Elimination:
    """Working matrix ``M = P W Q`` with ``P`` and ``Q`` tracked op by op."""

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]]):
        n = len(rows)
        self.n = n
        self.M = [list(r) for r in rows]
        self.P = identity(n)
        self.Q = identity(n)
        self.det_P = ONE
        self.det_Q = ONE
        self.log: List[Op] = []

    def add_row(self, target: int, source: int, factor: LaurentPoly) -> None:
        if not factor:
            return
        for mat in (self.M, self.P):
            src, dst = mat[source], mat[target]
            for k in range(self.n):
                if src[k]:
                    dst[k] = dst[k] + factor * src[k]
        self.log.append(Op("add_row", target, source, factor))

    def add_col(self, target: int, source: int, factor: LaurentPoly) -> None:
        if not factor:
            return
        for mat in (self.M, self.Q):
            for row in mat:
                if row[source]:
                    row[target] = row[target] + factor * row[source]
        self.log.append(Op("add_col", target, source, factor))

    def scale_row(self, i: int, unit: LaurentPoly) -> None:
        if unit.is_unit() is None:
            raise ValueError(f"row scaling needs a unit, got {unit}")
        for mat in (self.M, self.P):
            mat[i] = [unit * e if e else e for e in mat[i]]
        self.det_P = self.det_P * unit
        self.log.append(Op("scale_row", i, factor=unit))

    def scale_col(self, j: int, unit: LaurentPoly) -> None:
        if unit.is_unit() is None:
            raise ValueError(f"column scaling needs a unit, got {unit}")
        for mat in (self.M, self.Q):
            for row in mat:
                if row[j]:
                    row[j] = unit * row[j]
        self.det_Q = self.det_Q * unit
        self.log.append(Op("scale_col", j, factor=unit))

    def permute_rows(self, perm: Sequence[int]) -> None:
        perm = tuple(perm)
        self.M = [self.M[k] for k in perm]
        self.P = [self.P[k] for k in perm]
        if _perm_sign(perm) < 0:
            self.det_P = -self.det_P
        self.log.append(Op("perm_rows", perm=perm))

    def permute_cols(self, perm: Sequence[int]) -> None:
        perm = tuple(perm)
        self.M = [[row[k] for k in perm] for row in self.M]
        self.Q = [[row[k] for k in perm] for row in self.Q]
        if _perm_sign(perm) < 0:
            self.det_Q = -self.det_Q
        self.log.append(Op("perm_cols", perm=perm))

    def cycle_cols_left(self, idx: Sequence[int]) -> None:
        """Move column ``idx[0]`` to position ``idx[-1]``, shifting the rest left."""
        perm = list(range(self.n))
        for t in range(len(idx) - 1):
            perm[idx[t]] = idx[t + 1]
        perm[idx[-1]] = idx[0]
        self.permute_cols(perm)


def replay(rows: Sequence[Sequence[LaurentPoly]], log: Sequence[Op]) -> Elimination:
    """Re-run a recorded operation log on ``rows``."""
    el = Elimination(rows)
    for op in log:
        if op.kind == "add_row":
            el.add_row(op.target, op.source, op.factor)
        elif op.kind == "add_col":
            el.add_col(op.target, op.source, op.factor)
        elif op.kind == "scale_row":
            el.scale_row(op.target, op.factor)
        elif op.kind == "scale_col":
            el.scale_col(op.target, op.factor)
        elif op.kind == "perm_rows":
            el.permute_rows(op.perm)
        elif op.kind == "perm_cols":
            el.permute_cols(op.perm)
        else:
            raise ValueError(f"unknown op kind {op.kind!r}")
    return el


@dataclass
class DiagonalForm:
    """``P W Q = D`` with ``D`` diagonal and ``det_P``, ``det_Q`` units."""

    W: List[List[LaurentPoly]]
    P: List[List[LaurentPoly]]
    D: List[List[LaurentPoly]]
    Q: List[List[LaurentPoly]]
    det_P: LaurentPoly
    det_Q: LaurentPoly
    log: List[Op] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.D)

    def diagonal(self) -> List[LaurentPoly]:
        return [self.D[i][i] for i in range(self.n)]

    def is_diagonal(self) -> bool:
        return all(not self.D[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def product(self) -> List[List[LaurentPoly]]:
        return matrix_product(matrix_product(self.P, self.W), self.Q)

    def verify(self) -> bool:
        """Exact check of ``P W Q == D``, diagonality and unit determinants."""
        return (self.is_diagonal() and self.product() == self.D
                and self.det_P.is_unit() is not None and self.det_Q.is_unit() is not None)


def _form(el: Elimination, W) -> DiagonalForm:
    return DiagonalForm([list(r) for r in W], el.P, el.M, el.Q, el.det_P, el.det_Q, list(el.log))


def _finish_cycle(el: Elimination, idx: Sequence[int]) -> None:
    # rotate the first column to the end; the sign fix keeps det(Q) = 1
    el.cycle_cols_left(idx)
    k = len(idx)
    if k % 2 == 0:
        el.scale_col(idx[-1], -ONE)
        el.scale_row(idx[-1], -ONE)


def _polygon_ops(el: Elimination, idx: Sequence[int], piece: LaurentPoly,
                 edges: Sequence[LaurentPoly]) -> None:
    """Reduce the undissected-polygon block on indices ``idx``.

    ``el.M[idx, idx]`` must be the weight matrix of a k-gon with piece weight
    ``piece`` and edge weights ``edges`` (edge t joins idx[t] and idx[t+1]).
    Afterwards that block is ``diag(e_1, ..., e_(k-1), e_k * sum_j (eps x^k)^j)``.
    """
    k = len(idx)
    inv = [e.inverse() for e in edges]
    # column t -= edge(t-1) * x * column t-1, right to left
    for t in range(k - 1, 0, -1):
        el.add_col(idx[t], idx[t - 1], -(edges[t - 1] * piece))
    # clear the first column from row 1 down, using columns 2..k-1
    for t in range(1, k - 1):
        f = el.M[idx[t]][idx[0]] * inv[t]
        el.add_col(idx[0], idx[t + 1], -f)
    # clear below each edge weight, top to bottom
    for t in range(k - 1):
        g = el.M[idx[t + 1]][idx[t + 1]] * inv[t]
        el.add_row(idx[t + 1], idx[t], -g)
    _finish_cycle(el, idx)


def _unit_block_ops(el: Elimination, idx: Sequence[int], y: LaurentPoly,
                    units: Sequence[LaurentPoly]) -> None:
    """Reduce a block of the unit-matrix shape to
    ``diag(-u_1, ..., -u_(s-1), delta^-1 * (1 + y + ... + y^s))``."""
    s = len(idx)
    neg_inv = [(-u).inverse() for u in units]
    for t in range(s - 1, 0, -1):
        el.add_col(idx[t], idx[t - 1], -units[t - 1])
    for t in range(s - 1):
        f = el.M[idx[t]][idx[0]] * neg_inv[t]
        el.add_col(idx[0], idx[t + 1], -f)
    for t in range(s - 1):
        g = el.M[idx[t + 1]][idx[t + 1]] * neg_inv[t]
        el.add_row(idx[t + 1], idx[t], -g)
    if s > 1:
        _finish_cycle(el, idx)


def _edge_weights(d: int, qs: Optional[Sequence[LaurentPoly]]) -> List[LaurentPoly]:
    if qs is None:
        return [q(j) for j in range(1, d + 1)]
    qs = [LaurentPoly.coerce(e) for e in qs]
    if len(qs) != d:
        raise ValueError(f"need {d} edge weights, got {len(qs)}")
    for e in qs:
        if e.is_unit() is None:
            raise ValueError(f"edge weight {e} is not a unit")
    return qs


def diagonalize_trivial(d: int, qs: Optional[Sequence[LaurentPoly]] = None,
                        piece: Optional[LaurentPoly] = None,
                        normalize: bool = True) -> DiagonalForm:
    """Diagonal form of the weight matrix of an undissected d-gon.

    With ``normalize=False`` the result is ``diag(q_1, ..., q_(d-1),
    q_d * sum_j (eps x^d)^j)`` with ``det P = (-1)^(d-1)`` and ``det Q = 1``.
    Otherwise unit row scalings and a permutation bring it to
    ``diag(sum_j (eps x^d)^j, 1, ..., 1)``.
    """
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    edges = _edge_weights(d, qs)
    piece = x(1) if piece is None else LaurentPoly.coerce(piece)
    W = polygon_weight_rows(d, piece, edges)
    el = Elimination(W)
    idx = list(range(d))
    _polygon_ops(el, idx, piece, edges)
    # the sign fix in _finish_cycle lands on P; move the permutation sign there too
    if normalize:
        for t in range(d):
            el.scale_row(t, edges[t].inverse())
        el.permute_rows([d - 1] + list(range(d - 1)))
        el.permute_cols([d - 1] + list(range(d - 1)))
    return _form(el, W)


def unit_block_matrix(y: LaurentPoly, units: Sequence[LaurentPoly]) -> List[List[LaurentPoly]]:
    """The s x s matrix with ``1 + y`` on the diagonal, ``u_i ... u_(j-1) y``
    above and ``(u_j ... u_(i-1))^-1`` below."""
    s = len(units) + 1
    rows = [[ZERO] * s for _ in range(s)]
    for i in range(s):
        rows[i][i] = ONE + y
        acc = ONE
        for j in range(i + 1, s):
            acc = acc * units[j - 1]
            rows[i][j] = acc * y
        acc = ONE
        for j in range(i - 1, -1, -1):
            acc = acc * units[j]
            rows[i][j] = acc.inverse()
    return rows


def reduce_unit_block(s: int, y: LaurentPoly, units: Sequence[LaurentPoly]) -> DiagonalForm:
    """``P U Q = diag(-u_1, ..., -u_(s-1), delta^-1 (1 + y + ... + y^s))``."""
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    units = [LaurentPoly.coerce(u) for u in units]
    if len(units) != s - 1:
        raise ValueError(f"need {s - 1} units, got {len(units)}")
    for u in units:
        if u.is_unit() is None:
            raise ValueError(f"{u} is not a unit")
    y = LaurentPoly.coerce(y)
    U = unit_block_matrix(y, units)
    el = Elimination(U)
    _unit_block_ops(el, list(range(s)), y, units)
    return _form(el, U)


def _peel_order_key(d: Dissection, piece: int) -> Tuple[int, int]:
    return (max(d.piece(piece)), piece)


def diagonalize(d: Dissection, W: Optional[WeightMatrix] = None) -> DiagonalForm:
    """Diagonal form of ``W_D(x; q)`` by peeling boundary pieces.

    The piece peeled next is the boundary piece (leaf of the dual tree of the
    remaining pieces) containing the largest vertex label, ties broken by the
    larger piece id.  ``D`` lists ``sum_j (eps c x_l^2)^j`` for pieces
    ``l = 1..m`` followed by ones.
    """
    if W is None:
        W = weight_matrix(d, "xq")
    rows = W.rows if isinstance(W, WeightMatrix) else W
    n = d.n
    el = Elimination(rows)
    y0 = edge_total(d) * full_weight(d)

    weight = {v: q(v) for v in range(1, n + 1)}
    active = list(range(1, n + 1))
    remaining = set(range(1, d.m + 1))
    adj = {p: {nb: dg for nb, dg in nbrs} for p, nbrs in d.dual_tree().items()}
    carrier: Dict[int, int] = {}  # piece -> row index holding its nontrivial entry

    while len(remaining) > 1:
        leaves = [p for p in remaining if len(adj[p]) == 1]
        alpha = max(leaves, key=lambda p: _peel_order_key(d, p))
        (nb, (a, b)), = adj[alpha].items()
        verts = d.piece(alpha)
        k = len(verts)
        # locate the cut diagonal as a consecutive pair (one, nn) of the piece
        for t in range(k):
            if {verts[t], verts[(t + 1) % k]} == {a, b}:
                one, nn = verts[t], verts[(t + 1) % k]
                ears = [verts[(t + 2 + r) % k] for r in range(k - 2)]
                break
        xa = x(alpha)
        s = len(ears)
        ci, cn = one - 1, nn - 1
        for r, ear in enumerate(ears):
            before = weight[nn] * xa ** (r + 1)
            for e in ears[:r]:
                before = before * weight[e]
            after = xa ** (s - r)
            for e in ears[r:]:
                after = after * weight[e]
            el.add_col(ear - 1, ci, -after.inverse())
            el.add_col(ear - 1, cn, -before)
        for r, ear in enumerate(ears):
            before = weight[nn] * xa ** (r + 1)
            for e in ears[:r]:
                before = before * weight[e]
            after = xa ** (s - r)
            for e in ears[r:]:
                after = after * weight[e]
            el.add_row(ear - 1, ci, -after)
            el.add_row(ear - 1, cn, -before.inverse())
        idx = [e - 1 for e in ears]
        for i in idx:
            el.scale_row(i, -xa)
        units = [weight[ears[r]] * xa for r in range(s - 1)]
        _unit_block_ops(el, idx, y0 * xa ** 2, units)
        carrier[alpha] = idx[-1]

        new_weight = weight[nn] * xa ** s
        for e in ears:
            new_weight = new_weight * weight[e]
            del weight[e]
        weight[nn] = new_weight
        active = [v for v in active if v not in ears]
        remaining.discard(alpha)
        del adj[nb][alpha]
        del adj[alpha]

    last, = remaining
    idx = [v - 1 for v in active]
    _polygon_ops(el, idx, x(last), [weight[v] for v in active])
    carrier[last] = idx[-1]

    _normalize(el, d, carrier)
    return _form(el, rows)


def _normalize(el: Elimination, d: Dissection, carrier: Dict[int, int]) -> None:
    """Scale every row of a generalised permutation matrix to its target entry
    and sort: piece factors in piece-id order first, then ones."""
    n = el.n
    col_of = {}
    for i in range(n):
        nz = [j for j in range(n) if el.M[i][j]]
        if len(nz) != 1:
            raise ArithmeticError(f"row {i} has {len(nz)} nonzero entries after reduction")
        col_of[i] = nz[0]
    for piece, i in carrier.items():
        entry = el.M[i][col_of[i]]
        target = piece_factor(d, piece, "xq")
        unit = _unit_ratio(entry, target)
        el.scale_row(i, unit.inverse())
    special = set(carrier.values())
    for i in range(n):
        if i not in special:
            el.scale_row(i, el.M[i][col_of[i]].inverse())
    order = [carrier[p] for p in range(1, d.m + 1)]
    order += [i for i in range(n) if i not in special]
    el.permute_rows(order)
    el.permute_cols([col_of[i] for i in order])


def _unit_ratio(entry: LaurentPoly, target: LaurentPoly) -> LaurentPoly:
    """The unit ``u`` with ``entry == u * target`` (target has constant term 1)."""
    best = None
    for exps, c in entry.terms():
        deg = sum(exps.values())
        if best is None or deg < best[0]:
            best = (deg, LaurentPoly.monomial(exps, c))
    unit = best[1]
    if unit.is_unit() is None or unit * target != entry:
        raise ArithmeticError(f"{entry} is not a unit multiple of {target}")
    return unit


def expected_diagonal(d: Dissection) -> List[LaurentPoly]:
    return [piece_factor(d, p, "xq") for p in range(1, d.m + 1)] + [ONE] * (d.n - d.m)
