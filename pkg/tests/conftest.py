"""Shared fixtures and an independent sympy oracle.

The oracle maps ``y_j`` to the j-th derivative of an undefined function
``f(x)`` and ``q_j`` to that of ``g(x)``, so total derivatives, Euler
operators and vector-field brackets can be recomputed by sympy without
touching the engine's own jet calculus.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from jetcalc.diffpoly import INDEP, JET_Q, JET_Y, DiffPoly, X, pvar, qvar, yvar

SX = sp.Symbol("x")
SF = sp.Function("f")
SG = sp.Function("g")


def to_sympy(p: DiffPoly) -> sp.Expr:
    out = sp.Integer(0)
    for mono, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for v, e in mono:
            if v.kind == INDEP:
                base = SX
            elif v.kind == JET_Y:
                base = SF(SX).diff(SX, v.index) if v.index else SF(SX)
            elif v.kind == JET_Q:
                base = SG(SX).diff(SX, v.index) if v.index else SG(SX)
            else:
                base = sp.Symbol(v.index)
            term *= base ** e
        out += term
    return sp.expand(out)


def sympy_equal(p: DiffPoly, expr: sp.Expr) -> bool:
    return sp.expand(to_sympy(p) - expr) == 0


@st.composite
def polys(draw, max_order: int = 3, max_terms: int = 4, with_q: bool = True,
          with_params: bool = True, max_degree: int = 3):
    pool = [X] + [yvar(j) for j in range(max_order + 1)]
    if with_q:
        pool += [qvar(0), qvar(1)]
    if with_params:
        pool += [pvar("a"), pvar("b")]
    terms: dict = {}
    for _ in range(draw(st.integers(0, max_terms))):
        factors = draw(st.lists(st.sampled_from(pool), max_size=max_degree))
        exps: dict = {}
        for v in factors:
            exps[v] = exps.get(v, 0) + 1
        c = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        mono = tuple(sorted(exps.items()))
        terms[mono] = terms.get(mono, 0) + c
    return DiffPoly(terms)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        title, ok, detail = mod.RESULTS[number]
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
