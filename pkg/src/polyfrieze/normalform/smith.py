"""Smith normal form of integer matrices with unimodular transforms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass
class SmithResult:
    """``U A V = S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``S`` is the divisibility-ordered Smith form.  When a target diagonal was
    requested, ``U_display A V_display = D_display`` realises it.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_display: Optional[IntMatrix] = None
    D_display: Optional[IntMatrix] = None
    V_display: Optional[IntMatrix] = None

    @property
    def invariant_factors(self) -> List[int]:
        return [self.S[i][i] for i in range(len(self.S))]

    @property
    def display_diagonal(self) -> Optional[List[int]]:
        if self.D_display is None:
            return None
        return [self.D_display[i][i] for i in range(len(self.D_display))]


def _snf(A: Sequence[Sequence[int]]):
    m = [list(map(int, r)) for r in A]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for mat in (m, V):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    def add_row(t, s, f):  # row t += f * row s
        for mat in (m, U):
            mat[t] = [a + f * b for a, b in zip(mat[t], mat[s])]

    def add_col(t, s, f):
        for mat in (m, V):
            for r in mat:
                r[t] += f * r[s]

    for t in range(min(rows, cols)):
        while True:
            # pivot: smallest nonzero absolute value in the trailing block
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return m, U, V
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // p))
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // p))
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            for mat in (m, U):
                mat[t] = [-a for a in mat[t]]
    return m, U, V


def unimodular_inverse(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(a)
    m, U, V = _snf(a)
    # U a V = diag(1, ..., 1) after sign fixing, so a^-1 = V U
    if any(m[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return int_matmul(V, U)


def smith_normal_form(A: Sequence[Sequence[int]],
                      display: Optional[Sequence[int]] = None) -> SmithResult:
    """Smith normal form ``U A V = S``.

    ``display`` optionally names another diagonal with the same elementary
    divisors (e.g. ``d_1 - 1, ..., d_m - 1, 1, ..., 1``); the result then also
    carries unimodular transforms realising that diagonal.
    """
    S, U, V = _snf(A)
    _prefer_special(U, V)
    res = SmithResult(U, S, V)
    if display is not None:
        n = len(S)
        target = [[display[i] if i == j else 0 for j in range(n)] for i in range(n)]
        S2, U2, V2 = _snf(target)
        if S2 != S:
            raise ValueError(f"diagonal {list(display)} is not equivalent to the matrix")
        # U2 T V2 = S = U A V  =>  T = U2^-1 U A V V2^-1
        res.U_display = int_matmul(unimodular_inverse(U2), U)
        res.V_display = int_matmul(V, unimodular_inverse(V2))
        res.D_display = target
        _prefer_special(res.U_display, res.V_display)
    return res


def _prefer_special(U: IntMatrix, V: IntMatrix) -> None:
    # negating row 0 of U and column 0 of V leaves U A V unchanged
    if U and int_det(U) < 0:
        U[0] = [-a for a in U[0]]
        for r in V:
            r[0] = -r[0]


def theorem_display(types: Sequence[int], n: int) -> List[int]:
    """``d_1 - 1, ..., d_m - 1`` followed by ones, padded to length n."""
    diag = [k - 1 for k in types]
    return diag + [1] * (n - len(diag))


def same_multiset(a: Sequence[int], b: Sequence[int]) -> bool:
    return Counter(a) == Counter(b)
