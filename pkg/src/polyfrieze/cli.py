"""Command-line front end: ``polyfrieze <command> [input] [options]``.

The input dissection is a JSON file, inline JSON text, ``-`` for stdin, or
``--random N [--seed S]``.  Exit codes: 0 ok, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .checks import RunReport, run_dissection_checks, run_lemma_checks
from .dissection import (Dissection, DissectionError, enumerate_dissections, enumeration_guard,
                         from_json, random_dissection)
from .frieze import build_frieze, find_zigzag, minor_table
from .normalform import (arithmetic_det, det_expand, det_formula, diagonalize, piece_factor,
                         smith_normal_form, theorem_display)
from .normalform.determinant import MAX_EXPAND_N
from .polyring import LaurentPoly, Var
from .walks import FLAVORS, weight_matrix

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
INPUT_HELP = "dissection JSON file, inline JSON, or '-' for stdin"


class InputError(Exception):
    pass


# input ------------------------------------------------------------------------

def load_dissection(args) -> Dissection:
    if getattr(args, "random", None) is not None:
        return random_dissection(args.random, args.seed)
    source = args.input
    if source is None:
        raise InputError("no dissection given (file, inline JSON, '-' or --random N)")
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError(f"no such file: {source}")
        text = path.read_text()
    try:
        return from_json(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def piece_names(args, d: Dissection) -> Optional[Dict[Var, str]]:
    if not getattr(args, "names", None):
        return None
    names = [s.strip() for s in args.names.split(",")]
    if len(names) != d.m or len(set(names)) != d.m or not all(names):
        raise InputError(f"--names needs {d.m} distinct names, got {args.names!r}")
    return {("x", i): name for i, name in enumerate(names, 1)}


# output -----------------------------------------------------------------------

def emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def fmt(p: LaurentPoly, names) -> str:
    return p.to_str(names)


def grid(rows: List[List[str]]) -> str:
    width = max((len(s) for row in rows for s in row), default=1)
    return "\n".join("  ".join(s.rjust(width) for s in row) for row in rows)


def matrix_json(rows, names) -> List[List[str]]:
    return [[fmt(e, names) for e in row] for row in rows]


# commands ---------------------------------------------------------------------

def cmd_show(args) -> int:
    d = load_dissection(args)
    data = d.to_json()
    lines = [str(d), f"pieces: {list(d.pieces)}", f"type: {list(d.type)}"]
    emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_matrix(args) -> int:
    d = load_dissection(args)
    names = piece_names(args, d)
    w = weight_matrix(d, args.flavor)
    rows = matrix_json(w.rows, names)
    emit(args, {"dissection": d.to_json(), "flavor": args.flavor, "matrix": rows}, grid(rows))
    return EXIT_OK


def _factored(d: Dissection, flavor: str, names) -> str:
    factors = [f"({fmt(piece_factor(d, p, flavor), names)})" for p in range(1, d.m + 1)]
    sign = "-" if d.n % 2 == 0 else ""
    if flavor == "xq":
        eps = LaurentPoly.monomial({("q", j): 1 for j in range(1, d.n + 1)})
        factors.insert(0, fmt(eps, names))
    return sign + "*".join(factors)


def cmd_det(args) -> int:
    d = load_dissection(args)
    names = piece_names(args, d)
    out = {"dissection": d.to_json(), "flavor": args.flavor, "method": args.method,
           "factored": _factored(d, args.flavor, names)}
    formula = expand = None
    if args.method in ("formula", "both"):
        formula = det_formula(d, args.flavor)
        out["formula"] = fmt(formula, names)
    if args.method in ("expand", "both"):
        if d.n > MAX_EXPAND_N:
            raise InputError(f"expansion is limited to n <= {MAX_EXPAND_N}")
        expand = det_expand(weight_matrix(d, args.flavor))
        out["expand"] = fmt(expand, names)
    lines = [f"factored: {out['factored']}"]
    lines += [f"{k}: {out[k]}" for k in ("formula", "expand") if k in out]
    code = EXIT_OK
    if formula is not None and expand is not None:
        out["equal"] = formula == expand
        lines.append(f"equal: {out['equal']}")
        code = EXIT_OK if out["equal"] else EXIT_CHECK
    emit(args, out, "\n".join(lines))
    return code


def cmd_diagform(args) -> int:
    d = load_dissection(args)
    names = piece_names(args, d)
    form = diagonalize(d)
    ok = form.verify()
    out = {
        "dissection": d.to_json(),
        "P": matrix_json(form.P, names),
        "D": [fmt(e, names) for e in form.diagonal()],
        "Q": matrix_json(form.Q, names),
        "det_P": fmt(form.det_P, names),
        "det_Q": fmt(form.det_Q, names),
        "verified": ok,
    }
    text = "\n".join([
        "D = diag(" + ", ".join(out["D"]) + ")",
        f"det P = {out['det_P']}", f"det Q = {out['det_Q']}",
        "P:", grid(out["P"]), "Q:", grid(out["Q"]),
        f"P*W*Q == D: {ok}",
    ])
    emit(args, out, text)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_snf(args) -> int:
    d = load_dissection(args)
    M = [[e.constant_value() for e in row] for row in weight_matrix(d, "arithmetic").rows]
    res = smith_normal_form(M, display=theorem_display(d.type, d.n))
    out = {
        "dissection": d.to_json(), "matrix": M,
        "invariant_factors": res.invariant_factors,
        "U": res.U, "V": res.V,
        "display": res.display_diagonal, "U_display": res.U_display,
        "V_display": res.V_display, "det": arithmetic_det(d),
    }
    text = "\n".join([
        f"det M = {out['det']}",
        "Smith form: diag(" + ", ".join(map(str, out["invariant_factors"])) + ")",
        "equivalent display: diag(" + ", ".join(map(str, out["display"])) + ")",
    ])
    emit(args, out, text)
    return EXIT_OK


def cmd_frieze(args) -> int:
    d = load_dissection(args)
    names = piece_names(args, d)
    fr = build_frieze(weight_matrix(d, args.flavor))
    first = 0 if args.show_zero_row else 1
    out = {"dissection": d.to_json(), "flavor": args.flavor,
           "rows": {str(r): [fmt(e, names) for e in fr.rows[r]] for r in range(first, fr.n)}}
    if args.latex:
        text = fr.latex(args.periods, names, args.show_zero_row)
        out["latex"] = text
    else:
        text = fr.render(args.periods, names, args.show_zero_row, max_width=args.width)
    emit(args, out, text)
    return EXIT_OK


def cmd_minors(args) -> int:
    d = load_dissection(args)
    names = piece_names(args, d)
    w = weight_matrix(d, args.flavor)
    table = []
    ok = True
    for row in minor_table(d, w):
        ok = ok and row["minor"] == row["formula"]
        table.append({
            "e": row["e"], "f": row["f"],
            "minor": fmt(row["minor"], names), "formula": fmt(row["formula"], names),
            "zigzag": None if row["zigzag"] is None else row["zigzag"].to_json(),
        })
    lines = [f"d({r['e']},{r['f']}) = {r['minor']}" for r in table]
    emit(args, {"dissection": d.to_json(), "flavor": args.flavor, "minors": table,
                "agree": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_zigzag(args) -> int:
    d = load_dissection(args)
    if d.vertex(args.i) == d.vertex(args.j):
        raise InputError("zigzag needs two different edges")
    z = find_zigzag(d, args.i, args.j)
    data = {"dissection": d.to_json(), "e": d.vertex(args.i), "f": d.vertex(args.j),
            "zigzag": None if z is None else z.to_json()}
    if z is None:
        text = f"no zig-zag sequence from e{args.i} to e{args.j}: the minor vanishes"
    else:
        seq = " -> ".join(f"({a},{b})" for a, b in z.sequence)
        text = f"{seq}\npieces: {list(z.pieces)}\nzig pieces: {list(z.zig_pieces)}"
    emit(args, data, text)
    return EXIT_OK


def _merge_all(n: int, reports: List[RunReport]) -> RunReport:
    # one entry per check: fail if any dissection failed, witness names the first
    merged: Dict[str, dict] = {}
    order: List[str] = []
    for rep in reports:
        for c in rep.checks:
            if c.name not in merged:
                merged[c.name] = {"check": c, "counts": defaultdict(int), "first_fail": None}
                order.append(c.name)
            slot = merged[c.name]
            slot["counts"][c.status] += 1
            if c.status == "fail" and slot["first_fail"] is None:
                slot["first_fail"] = {"dissection": rep.subject, "witness": c.witness}
    checks = []
    for name in order:
        slot = merged[name]
        c = slot["check"]
        status = "fail" if slot["first_fail"] else ("pass" if slot["counts"]["pass"] else "skip")
        witness = {"counts": dict(sorted(slot["counts"].items()))}
        if slot["first_fail"]:
            witness["first_failure"] = slot["first_fail"]
        checks.append(type(c)(name, c.criterion, status, witness,
                              sum(r.checks[i].seconds for r in reports
                                  for i in range(len(r.checks)) if r.checks[i].name == name)))
    return RunReport({"n": n, "count": len(reports)}, checks)


def cmd_verify(args) -> int:
    start = time.perf_counter()
    if args.all is not None:
        guard = enumeration_guard()
        if not 3 <= args.all <= guard:
            raise InputError(f"--all needs 3 <= n <= {guard} (set FRIEZE_GUARD_N to raise)")
        reports = []
        for d in enumerate_dissections(args.all):
            reports.append(RunReport(d.to_json(), run_dissection_checks(d, args.fuzz)))
        report = _merge_all(args.all, reports)
    else:
        d = load_dissection(args)
        report = RunReport(d.to_json(), run_dissection_checks(d, args.fuzz))
        report.subject["det_arithmetic"] = arithmetic_det(d)
    if args.fuzz is not None:
        report.subject["fuzz"] = args.fuzz
    if not args.skip_lemmas:
        report.checks.extend(run_lemma_checks())
    report.seconds = time.perf_counter() - start
    emit(args, report.to_json(args.timings), report.to_text(args.timings))
    return EXIT_OK if report.ok else EXIT_CHECK


# parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    opts = argparse.ArgumentParser(add_help=False)
    opts.add_argument("--random", type=int, metavar="N",
                        help="use a pseudo-random dissection of the N-gon")
    opts.add_argument("--seed", type=int, default=0, help="seed for --random")
    opts.add_argument("--format", choices=("text", "json"), default="text")
    opts.add_argument("--names", help="comma-separated display names for x1..xm")
    common = argparse.ArgumentParser(add_help=False, parents=[opts])
    common.add_argument("input", nargs="?", help=INPUT_HELP)

    def flavor(default: str = "x") -> argparse.ArgumentParser:
        # a fresh parent per command: parents share their action objects
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--flavor", choices=FLAVORS, default=default)
        return parent

    parser = argparse.ArgumentParser(prog="polyfrieze", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("show", "validate"):
        p = sub.add_parser(name, parents=[common], help="validate and describe a dissection")
        p.set_defaults(func=cmd_show)
    p = sub.add_parser("matrix", parents=[common, flavor()], help="walk / weight matrix")
    p.set_defaults(func=cmd_matrix)
    p = sub.add_parser("det", parents=[common, flavor()], help="determinant")
    p.add_argument("--method", choices=("formula", "expand", "both"), default="both")
    p.set_defaults(func=cmd_det)
    p = sub.add_parser("diagform", parents=[common], help="diagonal form P*W*Q = D")
    p.set_defaults(func=cmd_diagform)
    p = sub.add_parser("snf", parents=[common], help="integer Smith form of the walk counts")
    p.set_defaults(func=cmd_snf)
    p = sub.add_parser("frieze", parents=[common, flavor()], help="frieze pattern")
    p.add_argument("--periods", type=int, default=2)
    p.add_argument("--latex", action="store_true")
    p.add_argument("--show-zero-row", action="store_true")
    p.add_argument("--width", type=int, default=None,
                   help="elide entries longer than this into a legend")
    p.set_defaults(func=cmd_frieze)
    p = sub.add_parser("minors", parents=[common, flavor("xq")], help="all 2x2 minors d(e,f)")
    p.set_defaults(func=cmd_minors)
    p = sub.add_parser("zigzag", parents=[opts], help="zig-zag sequence from e_i to e_j")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("input", nargs="?", help=INPUT_HELP)
    p.set_defaults(func=cmd_zigzag)
    p = sub.add_parser("verify", parents=[common], help="run every theorem check")
    p.add_argument("--all", type=int, metavar="N", help="check every dissection of the N-gon")
    p.add_argument("--fuzz", type=int, metavar="SEED",
                   help="corrupt one matrix entry (negative control)")
    p.add_argument("--timings", action="store_true", help="include timings in the report")
    p.add_argument("--skip-lemmas", action="store_true",
                   help="skip the dissection-independent lemma checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.command == "frieze" and args.periods < 1:
        print("error: --periods must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, DissectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
