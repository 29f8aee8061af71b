"""Named verification checks shared by the ``verify`` command and the tests.

Each check runs against one dissection (or, for the lemma checks, against
small symbolic instances) and returns a :class:`CheckResult` whose witness
pinpoints the first failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .dissection import Dissection, build
from .frieze import diagonal_minor, find_zigzag, minor, minor_formula
from .normalform import (check_complementary_symmetry, det_expand, det_formula, diagonalize,
                         diagonalize_trivial, expected_diagonal, geometric_sum, int_det,
                         int_matmul, reduce_unit_block, smith_normal_form, theorem_display,
                         toeplitz_det_formula, toeplitz_matrix, toeplitz_via_polygon,
                         unit_block_matrix)
from .normalform.determinant import MAX_EXPAND_N
from .polyring import ONE, LaurentPoly, q, x
from .walks import FLAVORS, WeightMatrix, all_ones, matrix_from_walks, specialize, weight_matrix

# walk enumeration is exponential; the oracle comparison is skipped above this
MAX_ORACLE_N = 8

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckResult:
    name: str
    criterion: int
    status: str
    witness: Optional[dict] = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "criterion": self.criterion, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


class Subject:
    """A dissection with lazily built matrices, optionally corrupted.

    ``fuzz`` adds 1 to one off-diagonal entry (chosen by the seed) of every
    flavour, which must make several checks fail.
    """

    def __init__(self, d: Dissection, fuzz: Optional[int] = None):
        self.d = d
        self.fuzz = fuzz
        self._cache: Dict[str, WeightMatrix] = {}
        self.fuzz_entry = None
        if fuzz is not None:
            rng = random.Random(fuzz)
            i = rng.randrange(1, d.n + 1)
            self.fuzz_entry = (i, d.vertex(i + rng.randrange(1, d.n)))

    def matrix(self, flavor: str) -> WeightMatrix:
        if flavor not in self._cache:
            w = weight_matrix(self.d, flavor)
            if self.fuzz_entry is not None:
                i, j = self.fuzz_entry
                w.rows[i - 1][j - 1] = w.rows[i - 1][j - 1] + ONE
            self._cache[flavor] = w
        return self._cache[flavor]


def _p(poly: LaurentPoly) -> str:
    return poly.to_str()


def check_symmetry(s: Subject) -> CheckResult:
    ok, bad = check_complementary_symmetry(s.matrix("arithmetic"))
    return CheckResult("symmetry_arithmetic", 1, PASS if ok else FAIL,
                       None if ok else {"entry": list(bad)})


def _complementary(flavor: str, name: str) -> Callable[[Subject], CheckResult]:
    def run(s: Subject) -> CheckResult:
        w = s.matrix(flavor)
        ok, bad = check_complementary_symmetry(w)
        if ok:
            return CheckResult(name, 3, PASS)
        i, j = bad
        return CheckResult(name, 3, FAIL, {"entry": [i, j], "v_ij": _p(w[i, j]),
                                           "v_ji": _p(w[j, i])})
    run.check_name, run.criterion = name, 3
    return run


def _determinant(flavor: str) -> Callable[[Subject], CheckResult]:
    crit = {"arithmetic": 1, "x": 2, "xq": 4}[flavor]
    name = f"det_{flavor}"

    def run(s: Subject) -> CheckResult:
        if s.d.n > MAX_EXPAND_N:
            return CheckResult(name, crit, SKIP, {"reason": f"n > {MAX_EXPAND_N}"})
        got = det_expand(s.matrix(flavor))
        want = det_formula(s.d, flavor)
        if got == want:
            return CheckResult(name, crit, PASS, {"det": _p(got)} if flavor == "arithmetic" else None)
        return CheckResult(name, crit, FAIL, {"expand": _p(got), "formula": _p(want)})
    run.check_name, run.criterion = name, crit
    return run


def fan_dissection(degrees) -> Dissection:
    """Pieces of the given degrees glued in a fan around vertex 1."""
    degrees = list(degrees)
    n = sum(degrees) - 2 * (len(degrees) - 1)
    diags, v = [], 1
    for k in degrees[:-1]:
        v += k - 2 if v > 1 else k - 1
        diags.append((1, v))
    return build(n, diags)


def collapse_variables(poly: LaurentPoly, d: Dissection) -> LaurentPoly:
    # one x and one q variable: the determinant then depends only on the type
    assignment = {("x", p): x(1) for p in range(1, d.m + 1)}
    assignment.update({("q", j): q(1) for j in range(1, d.n + 1)})
    return poly.subs(assignment)


def check_gluing(s: Subject) -> CheckResult:
    name = "det_gluing_invariance"
    if s.d.n > MAX_EXPAND_N:
        return CheckResult(name, 4, SKIP, {"reason": f"n > {MAX_EXPAND_N}"})
    other = fan_dissection(sorted(s.d.type, reverse=True))
    mine = collapse_variables(det_expand(s.matrix("xq")), s.d)
    theirs = collapse_variables(det_expand(weight_matrix(other, "xq")), other)
    if mine == theirs:
        return CheckResult(name, 4, PASS)
    return CheckResult(name, 4, FAIL, {"other": other.to_json(), "det": _p(mine),
                                       "other_det": _p(theirs)})


def check_diagonal_form(s: Subject) -> CheckResult:
    name = "diagonal_form"
    form = diagonalize(s.d, s.matrix("xq"))
    if not form.is_diagonal():
        bad = next([i + 1, j + 1] for i in range(form.n) for j in range(form.n)
                   if i != j and form.D[i][j])
        return CheckResult(name, 5, FAIL, {"off_diagonal": bad})
    if form.product() != form.D:
        return CheckResult(name, 5, FAIL, {"reason": "P*W*Q != D"})
    if form.det_P.is_unit() is None or form.det_Q.is_unit() is None:
        return CheckResult(name, 5, FAIL, {"det_P": _p(form.det_P), "det_Q": _p(form.det_Q)})
    want = expected_diagonal(s.d)
    if form.diagonal() != want:
        return CheckResult(name, 5, FAIL, {"diagonal": [_p(e) for e in form.diagonal()],
                                           "expected": [_p(e) for e in want]})
    return CheckResult(name, 5, PASS)


def check_smith(s: Subject) -> CheckResult:
    name = "smith_form"
    M = [[e.constant_value() for e in row] for row in s.matrix("arithmetic").rows]
    target = theorem_display(s.d.type, s.d.n)
    try:
        res = smith_normal_form(M, display=target)
    except ValueError as exc:
        return CheckResult(name, 1, FAIL, {"reason": str(exc), "display": target})
    for U, D, V in ((res.U, res.S, res.V), (res.U_display, res.D_display, res.V_display)):
        if int_matmul(int_matmul(U, M), V) != D or abs(int_det(U)) != 1 or abs(int_det(V)) != 1:
            return CheckResult(name, 1, FAIL, {"reason": "U*M*V != D"})
    return CheckResult(name, 1, PASS, {"invariant_factors": res.invariant_factors,
                                       "display": res.display_diagonal})


def check_minors(s: Subject) -> CheckResult:
    name = "zigzag_minors"
    d, w = s.d, s.matrix("xq")
    for e in range(1, d.n + 1):
        for f in range(1, d.n + 1):
            got = minor(w, e, f)
            want = diagonal_minor(d) if e == f else minor_formula(d, e, f)
            if got != want:
                return CheckResult(name, 8, FAIL, {"e": e, "f": f, "minor": _p(got),
                                                   "formula": _p(want)})
    return CheckResult(name, 8, PASS)


def check_specialization(s: Subject) -> CheckResult:
    name = "specialization"
    d = s.d
    w = specialize(s.matrix("xq"), all_ones(d), "arithmetic")
    if w.rows != s.matrix("arithmetic").rows:
        return CheckResult(name, 9, FAIL, {"reason": "x=q=1 differs from the walk counts"})
    for e in range(1, d.n + 1):
        for f in range(1, d.n + 1):
            got = minor(w, e, f)
            if e == f:
                want = -1
            else:
                want = 1 if find_zigzag(d, e, f) is not None else 0
            if got != want:
                return CheckResult(name, 9, FAIL, {"e": e, "f": f, "minor": _p(got),
                                                   "expected": want})
    return CheckResult(name, 9, PASS)


def check_walk_oracle(s: Subject) -> CheckResult:
    name = "walk_oracle"
    if s.d.n > MAX_ORACLE_N:
        return CheckResult(name, 10, SKIP, {"reason": f"n > {MAX_ORACLE_N}"})
    for flavor in FLAVORS:
        brute = matrix_from_walks(s.d, flavor)
        w = s.matrix(flavor)
        for i in range(1, s.d.n + 1):
            for j in range(1, s.d.n + 1):
                if brute[i, j] != w[i, j]:
                    return CheckResult(name, 10, FAIL, {"flavor": flavor, "entry": [i, j],
                                                        "walks": _p(brute[i, j]),
                                                        "matrix": _p(w[i, j])})
    return CheckResult(name, 10, PASS)


for _fn, _name, _crit in (
        (check_symmetry, "symmetry_arithmetic", 1), (check_gluing, "det_gluing_invariance", 4),
        (check_diagonal_form, "diagonal_form", 5), (check_smith, "smith_form", 1),
        (check_minors, "zigzag_minors", 8), (check_specialization, "specialization", 9),
        (check_walk_oracle, "walk_oracle", 10)):
    _fn.check_name, _fn.criterion = _name, _crit

DISSECTION_CHECKS: List[Callable[[Subject], CheckResult]] = [
    check_symmetry,
    _complementary("x", "complementary_symmetry_phi"),
    _complementary("xq", "complementary_symmetry_psi"),
    _determinant("arithmetic"),
    _determinant("x"),
    _determinant("xq"),
    check_gluing,
    check_diagonal_form,
    check_smith,
    check_minors,
    check_specialization,
    check_walk_oracle,
]


# lemma checks on symbolic instances ------------------------------------------

def check_trivial_polygon(max_d: int = 8) -> CheckResult:
    name = "trivial_polygon_lemma"
    for d in range(3, max_d + 1):
        form = diagonalize_trivial(d)
        eps = LaurentPoly.monomial({("q", j): 1 for j in range(1, d + 1)})
        want = [geometric_sum(eps * x(1) ** d, d - 2)] + [ONE] * (d - 1)
        if not form.verify() or form.diagonal() != want:
            return CheckResult(name, 6, FAIL, {"d": d})
    return CheckResult(name, 6, PASS)


def check_unit_block(max_s: int = 6) -> CheckResult:
    name = "unit_block_lemma"
    y = q(1)
    for s in range(1, max_s + 1):
        units = [x(i) for i in range(1, s)]
        if det_expand(unit_block_matrix(y, units)) != geometric_sum(y, s):
            return CheckResult(name, 6, FAIL, {"s": s, "reason": "determinant"})
        if not reduce_unit_block(s, y, units).verify():
            return CheckResult(name, 6, FAIL, {"s": s, "reason": "reduction"})
    return CheckResult(name, 6, PASS)


def check_toeplitz(max_d: int = 7) -> CheckResult:
    name = "toeplitz_corollary"
    for d in range(3, max_d + 1):
        for m in range(0, d - 1):
            T = toeplitz_matrix(d, m)
            if T != toeplitz_via_polygon(d, m):
                return CheckResult(name, 7, FAIL, {"d": d, "m": m, "reason": "matrix"})
            if det_expand(T) != toeplitz_det_formula(d, m):
                return CheckResult(name, 7, FAIL, {"d": d, "m": m, "reason": "determinant"})
    return CheckResult(name, 7, PASS)


for _fn, _name in ((check_trivial_polygon, "trivial_polygon_lemma"),
                   (check_unit_block, "unit_block_lemma"), (check_toeplitz, "toeplitz_corollary")):
    _fn.check_name = _name
    _fn.criterion = 7 if _fn is check_toeplitz else 6

LEMMA_CHECKS = [check_trivial_polygon, check_unit_block, check_toeplitz]


def _timed(fn, *args) -> CheckResult:
    start = time.perf_counter()
    try:
        res = fn(*args)
    except (ArithmeticError, ValueError) as exc:
        # a corrupted matrix can break an algorithm's preconditions outright
        res = CheckResult(fn.check_name, fn.criterion, FAIL,
                          {"error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - start
    return res


def run_dissection_checks(d: Dissection, fuzz: Optional[int] = None) -> List[CheckResult]:
    s = Subject(d, fuzz)
    return [_timed(check, s) for check in DISSECTION_CHECKS]


def run_lemma_checks() -> List[CheckResult]:
    return [_timed(check) for check in LEMMA_CHECKS]


@dataclass
class RunReport:
    """Outcome of a verification run."""

    subject: dict
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self, timings: bool = False) -> dict:
        out = {"subject": self.subject, "ok": self.ok,
               "checks": [c.to_json(timings) for c in self.checks]}
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out

    def to_text(self, timings: bool = False) -> str:
        lines = [f"subject: {self.subject}"]
        for c in self.checks:
            line = f"  [{c.status.upper():4}] {c.name} (criterion {c.criterion})"
            if timings:
                line += f" {c.seconds:.3f}s"
            if c.witness is not None:
                line += f" {c.witness}"
            lines.append(line)
        lines.append("ALL PASS" if self.ok else "FAILURES")
        return "\n".join(lines)
