"""Plain-text and LaTeX rendering in engine monomial order."""

from __future__ import annotations

import re
from fractions import Fraction

from ..diffpoly import INDEP, JET_Q, JET_Y, DiffPoly, Var

__all__ = ["render_text", "render_latex", "var_latex"]

_GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau",
    "phi", "chi", "psi", "omega",
}
_TAG = re.compile(r"([A-Za-z]+)_?([0-9]+)\Z")


def _monomial_text(mono) -> str:
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in mono)


def render_text(p: DiffPoly) -> str:
    """Render in the parser's grammar, e.g. ``x*y3 - y2``."""
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        neg = c < 0
        mag = -c if neg else c
        body = _monomial_text(mono)
        if not body:
            s = str(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{mag}*{body}"
        if not parts:
            parts.append(f"-{s}" if neg else s)
        else:
            parts.append(f"- {s}" if neg else f"+ {s}")
    return " ".join(parts)


def var_latex(v: Var) -> str:
    if v.kind == INDEP:
        return "x"
    if v.kind == JET_Y:
        return "y" if v.index == 0 else f"y_{{{v.index}}}"
    if v.kind == JET_Q:
        return "\\mathfrak{q}" if v.index == 0 else f"\\mathfrak{{q}}_{{{v.index}}}"
    tag = str(v.index)
    if tag in _GREEK:
        return "\\" + tag
    m = _TAG.match(tag)
    if m:
        head = "\\" + m.group(1) if m.group(1) in _GREEK else m.group(1)
        return f"{head}_{{{m.group(2)}}}"
    return tag if len(tag) == 1 else f"\\mathrm{{{tag}}}"


def _factor_latex(v: Var, e: int) -> str:
    base = var_latex(v)
    return base if e == 1 else f"{base}^{{{e}}}"


def _coeff_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def render_latex(p: DiffPoly) -> str:
    """Render as LaTeX, e.g. ``-\\frac{1}{2} y_{1}^{2}``."""
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        neg = c < 0
        mag = -c if neg else c
        body = " ".join(_factor_latex(v, e) for v, e in mono)
        if not body:
            s = _coeff_latex(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{_coeff_latex(mag)} {body}"
        if not parts:
            parts.append(f"-{s}" if neg else s)
        else:
            parts.append(f"- {s}" if neg else f"+ {s}")
    return " ".join(parts)
