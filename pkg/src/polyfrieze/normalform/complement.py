"""Complementing maps and complementary-symmetry checks.

For a dissection with pieces of degrees ``d_l`` the complement of a monomial
``prod x_l^a_l`` is ``prod x_l^(d_l - 2 - a_l)``; with edge variables the
``q``-part is complemented inside ``q_1 ... q_n`` as well.  Both maps are
linear involutions on polynomials whose exponents lie within these caps.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..dissection import Dissection
from ..polyring import LaurentPoly, Var
from ..walks import WeightMatrix, edge_total, full_weight


class CapError(ValueError):
    """A polynomial term lies outside the domain of a complementing map."""


class ComplementContext:
    def __init__(self, d: Dissection):
        self.dissection = d
        self.x_caps: Dict[int, int] = {p: d.degree(p) - 2 for p in range(1, d.m + 1)}
        self.n = d.n
        self.c = full_weight(d)
        self.eps = edge_total(d)

    def _complement_x(self, exps: Dict[Var, int], out: Dict[Var, int]) -> None:
        for (kind, i), e in exps.items():
            if kind == "x":
                cap = self.x_caps.get(i)
                if cap is None or not 0 <= e <= cap:
                    raise CapError(f"x{i}^{e} outside the caps of this dissection")
        for p, cap in self.x_caps.items():
            e = cap - exps.get(("x", p), 0)
            if e:
                out[("x", p)] = e

    def phi(self, f: LaurentPoly) -> LaurentPoly:
        """Complement with respect to ``c``; ``f`` must be free of edge variables."""

        def comp(exps):
            if any(kind == "q" for kind, _ in exps):
                raise CapError("phi is only defined on polynomials in piece variables")
            out: Dict[Var, int] = {}
            self._complement_x(exps, out)
            return out

        return f.map_monomials(comp)

    def psi(self, f: LaurentPoly) -> LaurentPoly:
        """Complement with respect to ``c`` in the x's and ``eps`` in the q's."""

        def comp(exps):
            out: Dict[Var, int] = {}
            self._complement_x(exps, out)
            for (kind, j), e in exps.items():
                if kind == "q" and not (1 <= j <= self.n and 0 <= e <= 1):
                    raise CapError(f"q{j}^{e} outside the caps of this dissection")
            for j in range(1, self.n + 1):
                if not exps.get(("q", j), 0):
                    out[("q", j)] = 1
            return out

        return f.map_monomials(comp)


def complement_phi(ctx: ComplementContext, f: LaurentPoly) -> LaurentPoly:
    return ctx.phi(f)


def complement_psi(ctx: ComplementContext, f: LaurentPoly) -> LaurentPoly:
    return ctx.psi(f)


def check_complementary_symmetry(w: WeightMatrix) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Check ``complement(w[i, j]) == w[j, i]`` for ``i != j`` and a zero diagonal.

    Uses phi for flavour ``"x"``, psi for ``"xq"``; an arithmetic matrix is
    checked for plain symmetry.  Returns ``(ok, first violating (i, j))`` with
    1-based labels.
    """
    n = w.n
    if w.flavor == "arithmetic":
        comp = None
    else:
        ctx = ComplementContext(w.dissection)
        comp = ctx.phi if w.flavor == "x" else ctx.psi
    for i in range(1, n + 1):
        if w[i, i]:
            return False, (i, i)
        for j in range(1, n + 1):
            if i == j:
                continue
            if comp is None:
                ok = w[i, j] == w[j, i]
            else:
                try:
                    ok = comp(w[i, j]) == w[j, i]
                except CapError:
                    ok = False
            if not ok:
                return False, (i, j)
    return True, None
