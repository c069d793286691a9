"""Seeded randomized checks of the differential-calculus identities."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .diffpoly import DiffPoly, X, pvar, qvar, yvar
from .vcalc import adjoint_apply, euler, invert_total_derivative, is_exact, reduce_order

__all__ = ["random_poly", "PropertyResult", "run_selftest", "PROPERTIES"]


def random_poly(rng: random.Random, max_order: int = 3, max_terms: int = 4,
                with_q: bool = True, with_params: bool = True,
                max_degree: int = 3) -> DiffPoly:
    """A small random differential polynomial."""
    pool = [X] + [yvar(j) for j in range(max_order + 1)]
    if with_q:
        pool += [qvar(j) for j in range(2)]
    if with_params:
        pool += [pvar("a"), pvar("b")]
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        exps: dict = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(pool)
            exps[v] = exps.get(v, 0) + 1
        mono = tuple(sorted(exps.items()))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        terms[mono] = terms.get(mono, 0) + c
    return DiffPoly(terms)


def random_linear_equation(rng: random.Random, order: int) -> DiffPoly:
    """``sum_j c_j(x) y_j`` with a unit top coefficient."""
    out = DiffPoly.var(yvar(order))
    for j in range(order):
        c = sum((DiffPoly.var(X, k).scale(rng.randint(-3, 3)) for k in range(3)), DiffPoly())
        out = out + c * DiffPoly.var(yvar(j))
    return out


def _derivation(rng):
    a, b = random_poly(rng), random_poly(rng)
    D = DiffPoly.total_derivative
    return D(a * b) == D(a) * b + a * D(b)


def _euler_kernel(rng):
    return euler(random_poly(rng, max_order=4).total_derivative()).is_zero()


def _multiplier(rng):
    F, Q = random_poly(rng, max_order=2), random_poly(rng, max_order=2)
    return euler(F * Q) == adjoint_apply(F, Q) + adjoint_apply(Q, F)


def _inversion(rng):
    e = random_poly(rng, max_order=3).total_derivative()
    if not is_exact(e):
        return False
    return invert_total_derivative(e).total_derivative() == e


def _reduction(rng):
    m = rng.randint(1, 3)
    if rng.random() < 0.5:
        L = (DiffPoly.var(yvar(0)) * random_linear_equation(rng, 2 * m)).scale(Fraction(1, 2))
    else:
        base = random_poly(rng, max_order=m, with_params=False)
        g = random_poly(rng, max_order=m, with_params=False)
        L = base + g.total_derivative()
    R = reduce_order(L, m)
    return R.jet_order() <= m and euler(R) == euler(L) and is_exact(L - R)


PROPERTIES: dict[str, Callable[[random.Random], bool]] = {
    "derivation-law": _derivation,
    "euler-kernel": _euler_kernel,
    "multiplier-identity": _multiplier,
    "inversion-round-trip": _inversion,
    "reduction-preserves-euler": _reduction,
}


@dataclass(frozen=True)
class PropertyResult:
    name: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def run_selftest(seed: int = 0, cases: int = 200) -> list[PropertyResult]:
    """Run every property ``cases`` times; each property gets its own stream."""
    results = []
    for i, (name, check) in enumerate(PROPERTIES.items()):
        rng = random.Random(seed * 1000 + i)
        failures = 0
        for _ in range(cases):
            try:
                ok = check(rng)
            except Exception:
                ok = False
            failures += not ok
        results.append(PropertyResult(name, cases, failures))
    return results
