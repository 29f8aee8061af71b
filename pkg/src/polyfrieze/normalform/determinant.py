"""Closed-form and expanded determinants of weight matrices."""

from __future__ import annotations

import math
from typing import Dict, List, Sequence

from ..dissection import Dissection
from ..polyring import ONE, ZERO, LaurentPoly, q, x
from ..walks import check_flavor, edge_total, full_weight, polygon_weight_rows

MAX_EXPAND_N = 14


def geometric_sum(y: LaurentPoly, top: int) -> LaurentPoly:
    """``1 + y + ... + y^top``."""
    acc = ONE
    power = ONE
    for _ in range(top):
        power = power * y
        acc = acc + power
    return acc


def piece_factor(d: Dissection, piece: int, flavor: str = "xq") -> LaurentPoly:
    """Nontrivial diagonal entry for one piece: ``sum_j (eps c x_l^2)^j``, j <= d_l - 2."""
    check_flavor(flavor)
    deg = d.degree(piece)
    if flavor == "arithmetic":
        return LaurentPoly.const(deg - 1)
    y = full_weight(d) * x(piece) ** 2
    if flavor == "xq":
        y = y * edge_total(d)
    return geometric_sum(y, deg - 2)


def det_formula(d: Dissection, flavor: str = "x") -> LaurentPoly:
    """Determinant of the weight matrix from its product formula."""
    check_flavor(flavor)
    sign = -1 if d.n % 2 == 0 else 1
    acc = LaurentPoly.const(sign)
    if flavor == "xq":
        acc = acc * edge_total(d)
    for p in range(1, d.m + 1):
        acc = acc * piece_factor(d, p, flavor)
    return acc


def det_expand(rows: Sequence[Sequence[LaurentPoly]], guard: int = MAX_EXPAND_N) -> LaurentPoly:
    """Division-free determinant by Laplace expansion over column subsets.

    ``minors[S]`` holds the determinant of the first ``|S|`` rows restricted
    to the column set ``S``; each row extends every minor by one column.
    Costs O(2^n n) ring operations and works over any commutative ring.
    """
    if hasattr(rows, "rows"):
        rows = rows.rows
    n = len(rows)
    if n > guard:
        raise ValueError(f"det_expand is limited to n <= {guard}, got {n}")
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        return ONE
    minors: Dict[int, LaurentPoly] = {0: ONE}
    for k in range(n):
        row = [LaurentPoly.coerce(e) for e in rows[k]]
        nonzero = [c for c in range(n) if row[c]]
        nxt: Dict[int, LaurentPoly] = {}
        for mask, minor in minors.items():
            for c in nonzero:
                bit = 1 << c
                if mask & bit:
                    continue
                # sign: number of chosen columns to the right of c
                term = row[c] * minor
                if bin(mask >> (c + 1)).count("1") & 1:
                    term = -term
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        minors = {k: v for k, v in nxt.items() if v}
        if not minors:
            return ZERO
    return minors.get((1 << n) - 1, ZERO)


def toeplitz_matrix(d: int, m: int, xv: LaurentPoly = None, qv: LaurentPoly = None
                    ) -> List[List[LaurentPoly]]:
    """The ``(d-m) x (d-m)`` matrix ``W_(d-m)(x; 1, ..., 1, q x^m)``.

    Entries: ``x^(j-i-1)`` above the diagonal, 0 on it and
    ``q x^(d-1-(i-j))`` below it.
    """
    if d < 3 or not 0 <= m <= d - 2:
        raise ValueError(f"need d >= 3 and 0 <= m <= d-2, got d={d}, m={m}")
    xv = x(1) if xv is None else xv
    qv = q(1) if qv is None else qv
    k = d - m
    rows = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if j > i:
                rows[i][j] = xv ** (j - i - 1)
            elif i > j:
                rows[i][j] = qv * xv ** (d - 1 - (i - j))
    return rows


def toeplitz_via_polygon(d: int, m: int, xv: LaurentPoly = None, qv: LaurentPoly = None
                         ) -> List[List[LaurentPoly]]:
    """Same matrix built as an edge-specialised polygon weight matrix."""
    xv = x(1) if xv is None else xv
    qv = q(1) if qv is None else qv
    k = d - m
    return polygon_weight_rows(k, xv, [ONE] * (k - 1) + [qv * xv ** m])


def toeplitz_det_formula(d: int, m: int, xv: LaurentPoly = None, qv: LaurentPoly = None
                         ) -> LaurentPoly:
    xv = x(1) if xv is None else xv
    qv = q(1) if qv is None else qv
    sign = -1 if (d - m - 1) % 2 else 1
    return sign * qv * xv ** m * geometric_sum(qv * xv ** d, d - 2 - m)


def arithmetic_det(d: Dissection) -> int:
    sign = -1 if d.n % 2 == 0 else 1
    return sign * math.prod(k - 1 for k in d.type)
