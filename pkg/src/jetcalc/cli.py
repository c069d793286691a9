"""Command-line driver.

Exit codes: 0 success, 1 a verification item failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Sequence, TextIO

from . import catalog
from .catalog import Form
from .diffpoly import DiffPoly, jet_limit
from .errors import JetcalcError
from .selfcheck import run_selftest
from .symmetry import (VectorField, characteristic, divergence_defect,
                       is_point_symmetry, variational_defect)
from .textio import parse_expression, render_latex, render_text
from .textio.jsonio import SCHEMA, dumps, encode_field, encode_poly, to_document
from .textio.vectorspec import parse_vector_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Printer:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out

    def expr(self, p: DiffPoly) -> str:
        return render_latex(p) if self.fmt == "latex" else render_text(p)

    def field(self, v: VectorField) -> str:
        parts = []
        for coeff, d in ((v.xi, "x"), (v.psi, "y")):
            if coeff.is_zero():
                continue
            if self.fmt == "latex":
                parts.append(f"\\left({render_latex(coeff)}\\right) \\partial_{d}")
            else:
                parts.append(f"({render_text(coeff)})*d/d{d}")
        return " + ".join(parts) or "0"

    def line(self, text: str = "") -> None:
        print(text, file=self.out)

    def doc(self, doc: dict) -> None:
        print(dumps(doc), file=self.out)


def _form(args) -> Form:
    return Form.GENERAL_Q if args.general_q else Form.CANONICAL


def cmd_equation(args, pr: _Printer) -> int:
    eq = catalog.equation(args.n, _form(args))
    if pr.fmt == "json":
        pr.doc(to_document(eq))
    else:
        pr.line(pr.expr(eq.delta))
    return EXIT_OK


def cmd_lagrangian(args, pr: _Printer) -> int:
    form = _form(args)
    L = catalog.lagrangian(args.n, form)
    if pr.fmt == "json":
        pr.doc({"schema": SCHEMA, "type": "Lagrangian",
                "data": {"n": args.n, "form": form.value, "lagrangian": encode_poly(L)}})
    else:
        pr.line(pr.expr(L))
    return EXIT_OK


def cmd_symmetries(args, pr: _Printer) -> int:
    fr = catalog.frame(args.n)
    if pr.fmt == "json":
        pr.doc(to_document(fr))
        return EXIT_OK
    width = max(len(name) for name in fr.names)
    for name, v in fr:
        pr.line(f"{name:<{width}}  {pr.field(v)}")
    return EXIT_OK


def cmd_classify(args, pr: _Printer) -> int:
    n = args.n
    v = parse_vector_spec(args.spec, n)
    delta = catalog.equation(n).delta
    point = is_point_symmetry(v, n)
    ddef = divergence_defect(v, delta)
    var_ok = vdef = L = None
    if n % 2 == 0:
        L = parse_expression(args.lagrangian) if args.lagrangian else catalog.lagrangian(n)
        vdef = variational_defect(v, L, n)
        var_ok = vdef.is_zero()
    elif args.lagrangian:
        raise JetcalcError("variational symmetries are only tested for even order")
    if pr.fmt == "json":
        pr.doc({"schema": SCHEMA, "type": "Classification", "data": {
            "n": n, "field": encode_field(v), "point_symmetry": point,
            "divergence": ddef.is_zero(), "divergence_defect": encode_poly(ddef),
            "variational": var_ok,
            "variational_defect": None if vdef is None else encode_poly(vdef),
            "lagrangian": None if L is None else encode_poly(L),
        }})
        return EXIT_OK
    div = "yes" if ddef.is_zero() else f"NO (defect {pr.expr(ddef)})"
    var = "n/a (odd order)" if var_ok is None else ("yes" if var_ok else "NO")
    pr.line(f"point symmetry: {'yes' if point else 'NO'}; divergence: {div}; variational: {var}")
    if var_ok is False:
        pr.line(f"variational defect: {pr.expr(vdef)}")
    return EXIT_OK


def cmd_first_integral(args, pr: _Printer) -> int:
    n = args.n
    v = parse_vector_spec(args.spec, n)
    F = catalog.first_integral(v, n, args.spec)
    ok = F.is_consistent()
    if pr.fmt == "json":
        doc = to_document(F)
        doc["data"]["verified"] = ok
        pr.doc(doc)
    else:
        pr.line(pr.expr(F.expr))
        Q = characteristic(v)
        status = "verified" if ok else "FAILED"
        pr.line(f"{status}: D_x F = Q*Delta with Q = {pr.expr(Q)}, Delta = {pr.expr(catalog.equation(n).delta)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, pr: _Printer) -> int:
    report = catalog.verify_conjecture(args.max_order, ceiling=args.ceiling)
    doc = to_document(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc) + "\n")
    if pr.fmt == "json":
        pr.doc(doc)
    else:
        width = max((len(i.check) for i in report.items), default=5)
        pr.line(f"{'n':>3}  {'check':<{width}}  status")
        for item in report.items:
            tag = " EXTRAPOLATION" if item.extrapolation else ""
            pr.line(f"{item.n:>3}  {item.check:<{width}}  {item.status}{tag}")
        fails = len(report.failures())
        pr.line(f"summary: {len(report.items)} checks, "
                f"{len(report.items) - fails} PASS, {fails} FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_selftest(args, pr: _Printer) -> int:
    results = run_selftest(args.seed, args.cases)
    passed = all(r.passed for r in results)
    if pr.fmt == "json":
        pr.doc({"schema": SCHEMA, "type": "SelftestReport", "data": {
            "seed": args.seed, "cases": args.cases, "passed": passed,
            "properties": [{"name": r.name, "cases": r.cases, "failures": r.failures}
                           for r in results]}})
    else:
        for r in results:
            pr.line(f"{r.name:<26} {r.cases - r.failures}/{r.cases} {'PASS' if r.passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "latex", "json"], default=argparse.SUPPRESS)
    common.add_argument("--jet-limit", type=int, metavar="M", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, metavar="S", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="jetcalc", parents=[common],
        description="Symmetries, Lagrangians and first integrals of y^(n) = 0.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("equation", parents=[common], help="print the order-n equation")
    p.add_argument("n", type=int)
    p.add_argument("--general-q", action="store_true", help="general form with free q(x)")
    p.set_defaults(func=cmd_equation)

    p = sub.add_parser("lagrangian", parents=[common], help="print the order-n/2 Lagrangian")
    p.add_argument("n", type=int)
    p.add_argument("--general-q", action="store_true")
    p.set_defaults(func=cmd_lagrangian)

    p = sub.add_parser("symmetries", parents=[common], help="list the n+4 point symmetries")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_symmetries)

    p = sub.add_parser("classify", parents=[common],
                       help="point/divergence/variational status of a vector spec")
    p.add_argument("n", type=int)
    p.add_argument("spec")
    p.add_argument("--lagrangian", metavar="EXPR")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("first-integral", parents=[common], help="first integral of a divergence symmetry")
    p.add_argument("n", type=int)
    p.add_argument("spec")
    p.set_defaults(func=cmd_first_integral)

    p = sub.add_parser("verify", parents=[common], help="order-by-order classification check")
    p.add_argument("--max-order", type=int, default=catalog.VERIFIED_MAX_ORDER, metavar="N")
    p.add_argument("--ceiling", type=int, default=catalog.DEFAULT_CEILING)
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", parents=[common], help="seeded randomized identity checks")
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    pr = _Printer(args.format, out or sys.stdout)
    limit = getattr(args, "jet_limit", None)
    try:
        with jet_limit(limit) if limit is not None else contextlib.nullcontext():
            return args.func(args, pr)
    except (JetcalcError, ValueError) as exc:
        print(f"jetcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
