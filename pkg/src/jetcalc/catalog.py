"""Equations of maximal symmetry, their Lagrangians, symmetry frames,
symmetry subalgebras and first integrals.

Equations are ``y_n = 0`` (canonical) or, for n in {2, 4, 6, 8}, the
general normal form in terms of one free coefficient ``q(x)``.  The
symmetry frame uses the source-equation solutions ``u = 1`` and ``v = x``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .diffpoly import JET_Y, PARAM, X, DiffPoly, param, pvar, x, y, yvar
from .errors import NotExactError, PreconditionError, UnsupportedError
from .linsolve import ParamSystem, extract_system, null_space, rref
from .symmetry import (VectorField, characteristic, divergence_defect,
                       is_point_symmetry, lie_bracket, variational_defect)
from .vcalc import Parity, adjoint_parity, invert_total_derivative

__all__ = [
    "Form", "MaximalEquation", "SymmetryFrame", "SubalgebraReport",
    "FirstIntegral", "ConjectureItem", "ConjectureReport",
    "equation", "lagrangian", "frame", "divergence_algebra",
    "variational_algebra", "first_integral", "closed_form",
    "constancy_check", "constancy_value", "verify_conjecture",
    "DEFAULT_CEILING", "VERIFIED_MAX_ORDER",
]

DEFAULT_CEILING = 12
# Orders above this lie outside the range the reference closed forms cover;
# results there are labelled as extrapolation.
VERIFIED_MAX_ORDER = 8


class Form(enum.Enum):
    CANONICAL = "canonical"
    GENERAL_Q = "general-q"


_EQUATIONS_Q = {
    2: "q*y + y2",
    4: "10*y1*q1 + 10*q*y2 + 3*y*(3*q^2 + q2) + y4",
    6: ("7*y2*(37*q^2 + 9*q2) + 70*q1*y3 + y1*(518*q*q1 + 28*q3) + 35*q*y4"
        " + 5*y*(45*q^3 + 26*q1^2 + 31*q*q2 + q4) + y6"),
    8: ("168*y3*(47*q*q1 + 2*q3) + 42*(47*q^2 + 9*q2)*y4"
        " + 4*y2*(3229*q^3 + 1773*q*q2 + 45*(33*q1^2 + q4))"
        " + 6*y1*(6458*q^2*q1 + 524*q*q3 + 9*(132*q1*q2 + q5))"
        " + 252*q1*y5 + 84*q*y6"
        " + 7*y*(1575*q^4 + 1654*q^2*q2 + 153*q2^2 + 226*q1*q3"
        " + 8*q*(347*q1^2 + 10*q4) + q6) + y8"),
}

_LAGRANGIANS_Q = {
    2: "1/2*(-y1^2 + q*y^2)",
    4: "1/2*(y2^2 - 10*q*y1^2 + 3*(3*q^2 + q2)*y^2)",
    6: ("1/2*(7*y*y2*(37*q^2 + 9*q2) + 5*y^2*(45*q^3 + 26*q1^2 + 31*q*q2 + q4)"
        " + y*y1*(518*q*q1 + 28*q3) - 35*q*y1*y3 + 35*y*q1*y3 - y3^2)"),
    8: ("1/2*(168*y*y3*(47*q*q1 + 2*q3) - 84*y1*q1*y4 + 84*q*y2*y4"
        " + 4*y*y2*(3229*q^3 + 1773*q*q2 + 45*(33*q1^2 + q4))"
        " + 6*y*y1*(6458*q^2*q1 + 524*q*q3 + 9*(132*q1*q2 + q5))"
        " + 42*y*(47*q^2 + 5*q2)*y4"
        " + 7*y^2*(1575*q^4 + 1654*q^2*q2 + 153*q2^2 + 226*q1*q3"
        " + 8*q*(347*q1^2 + 10*q4) + q6) + y4^2)"),
}

# First integrals of alpha*F + beta*G + gamma*H for y_n = 0.
_W2_FIRST_INTEGRALS = {
    4: ("-2*gamma*y1^2 + (3*y*gamma + (-beta + gamma*x)*y1)*y2"
        " + 1/2*(alpha + x*(2*beta - gamma*x))*y2^2"
        " + (3*y*(beta - gamma*x) - (alpha + x*(2*beta - gamma*x))*y1)*y3"),
    6: ("9/2*gamma*y2^2 + (-8*gamma*y1 + (beta - gamma*x)*y2)*y3"
        " - 1/2*(alpha + x*(2*beta - gamma*x))*y3^2"
        " + (5*y*gamma - 3*(beta - gamma*x)*y1 + (alpha + 2*x*beta - x^2*gamma)*y2)*y4"
        " + (5*y*(beta - gamma*x) - (alpha + x*(2*beta - gamma*x))*y1)*y5"),
    8: ("-8*gamma*y3^2 + (15*gamma*y2 + (gamma*x - beta)*y3)*y4"
        " + 1/2*(alpha + x*(2*beta - gamma*x))*y4^2"
        " - (12*gamma*y1 - 3*(beta - gamma*x)*y2 + (alpha + 2*x*beta - x^2*gamma)*y3)*y5"
        " + (7*y*gamma - 5*(beta - gamma*x)*y1 + (alpha + 2*x*beta - x^2*gamma)*y2)*y6"
        " + (7*y*(beta - gamma*x) - (alpha + x*(2*beta - gamma*x))*y1)*y7"),
}

# Variational defect of the generic divergence symmetry, canonical Lagrangian.
_VARIATIONAL_DEFECTS = {
    4: "2*(a2 + 3*a3*x - 2*gamma*y1)*y2",
    6: "-3*(2*a3 + 8*a4*x + 20*a5*x^2 - 3*gamma*y2)*y3",
    8: "8*(3*(a4 + 5*x*(a5 + 3*a6*x + 7*a7*x^2)) - 2*gamma*y3)*y4",
}


def _parse(src: str) -> DiffPoly:
    from .textio.parse import parse_expression
    return parse_expression(src)


def _coerce_form(form) -> Form:
    return form if isinstance(form, Form) else Form(form)


@dataclass(frozen=True)
class MaximalEquation:
    n: int
    form: Form
    delta: DiffPoly


def equation(n: int, form: Form | str = Form.CANONICAL) -> MaximalEquation:
    form = _coerce_form(form)
    if n < 2:
        raise UnsupportedError(f"order must be at least 2, got {n}")
    if form is Form.CANONICAL:
        return MaximalEquation(n, form, y(n))
    if n not in _EQUATIONS_Q:
        raise UnsupportedError(f"no general-q equation of order {n} (only 2, 4, 6, 8)")
    return MaximalEquation(n, form, _parse(_EQUATIONS_Q[n]))


def lagrangian(n: int, form: Form | str = Form.CANONICAL) -> DiffPoly:
    """Order-n/2 Lagrangian whose Euler image is ``equation(n, form)``."""
    form = _coerce_form(form)
    if n % 2 or n < 2:
        raise UnsupportedError(f"odd order {n} has no Lagrangian of this kind")
    if form is Form.CANONICAL:
        m = n // 2
        return y(m, 2).scale(Fraction((-1) ** m, 2))
    if n not in _LAGRANGIANS_Q:
        raise UnsupportedError(f"no general-q Lagrangian of order {n}")
    return _parse(_LAGRANGIANS_Q[n])


# -- symmetry frame ---------------------------------------------------------

def generator_names(n: int) -> tuple[str, ...]:
    return tuple(f"V_{k}" for k in range(n)) + ("W_y", f"F_{n}", f"G_{n}", f"H_{n}")


def generator_params(n: int) -> tuple[str, ...]:
    """Parameter tags used for the generic combination, aligned with names."""
    return tuple(f"a{k}" for k in range(n)) + ("lambda", "alpha", "beta", "gamma")


@dataclass(frozen=True)
class SymmetryFrame:
    n: int
    generators: tuple[tuple[str, VectorField], ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def __getitem__(self, name: str) -> VectorField:
        for key, v in self.generators:
            if key == name:
                return v
        raise KeyError(name)

    def V(self, k: int) -> VectorField:
        return self[f"V_{k}"]

    @property
    def W(self) -> VectorField:
        return self["W_y"]

    @property
    def F(self) -> VectorField:
        return self[f"F_{self.n}"]

    @property
    def G(self) -> VectorField:
        return self[f"G_{self.n}"]

    @property
    def H(self) -> VectorField:
        return self[f"H_{self.n}"]

    def combination(self, coeffs: dict[str, Fraction | DiffPoly]) -> VectorField:
        out = VectorField(DiffPoly(), DiffPoly())
        for name, c in coeffs.items():
            out = out + self[name] * c
        return out


@functools.lru_cache(maxsize=None)
def frame(n: int) -> SymmetryFrame:
    """The n + 4 point symmetries of ``y_n = 0``."""
    if n < 2:
        raise UnsupportedError("frames are defined for n >= 2")
    zero = DiffPoly()
    gens = [(f"V_{k}", VectorField(zero, x(k) if k else DiffPoly.const(1))) for k in range(n)]
    c = n - 1
    gens += [
        ("W_y", VectorField(zero, y())),
        (f"F_{n}", VectorField(DiffPoly.const(1), zero)),
        (f"G_{n}", VectorField(x().scale(2), y().scale(c))),
        (f"H_{n}", VectorField(-x(2), -(x() * y()).scale(c))),
    ]
    for name, v in gens:
        if not is_point_symmetry(v, n):
            raise AssertionError(f"{name} is not a point symmetry of y{n} = 0")
    return SymmetryFrame(n, tuple(gens))


def frame_coordinates(fr: SymmetryFrame, v: VectorField) -> dict[str, Fraction] | None:
    """Coordinates of a parameter-free field in the frame basis, or None."""
    tags = generator_params(fr.n)
    tagvars = {pvar(t): i for i, t in enumerate(tags)}
    generic = fr.combination({name: param(t) for name, t in zip(fr.names, tags)})
    rows: dict[tuple, list[Fraction]] = {}
    for part, diff in (("xi", generic.xi - v.xi), ("psi", generic.psi - v.psi)):
        for mono, cf in diff.items():
            hits = [i for w, _ in mono if w in tagvars for i in [tagvars[w]]]
            rest = tuple((w, e) for w, e in mono if w not in tagvars)
            row = rows.setdefault((part, rest), [Fraction(0)] * (len(tags) + 1))
            if hits:
                row[hits[0]] += cf
            else:
                row[-1] -= cf
    reduced, pivots = rref(list(rows.values()), len(tags) + 1)
    if len(tags) in pivots:
        return None
    sol = [Fraction(0)] * len(tags)
    for row, p in zip(reduced, pivots):
        sol[p] = row[-1]
    return {name: c for name, c in zip(fr.names, sol) if c}


# -- subalgebras ------------------------------------------------------------

@dataclass(frozen=True)
class SubalgebraReport:
    kind: str  # "Divergence" or "Variational"
    n: int
    basis: tuple[dict, ...]  # each maps generator name -> Fraction
    defect_before: DiffPoly
    constraints: ParamSystem
    extrapolation: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def basis_names(self) -> list[str]:
        """Generator names when every basis element is a single generator."""
        names = []
        for b in self.basis:
            if len(b) != 1 or next(iter(b.values())) != 1:
                raise ValueError("basis element is not a single generator")
            names.append(next(iter(b)))
        return names

    def fields(self) -> list[VectorField]:
        fr = frame(self.n)
        return [fr.combination(b) for b in self.basis]


def _generic_field(fr: SymmetryFrame, names: Sequence[str], tags: Sequence[str]) -> VectorField:
    return fr.combination({name: param(t) for name, t in zip(names, tags)})


def divergence_algebra(n: int) -> SubalgebraReport:
    """Divergence symmetries of ``y_n = 0`` inside the point symmetry algebra."""
    fr = frame(n)
    tags = generator_params(n)
    w = _generic_field(fr, fr.names, tags)
    defect = divergence_defect(w, y(n))
    system = extract_system(defect, tags)
    space = null_space(system)
    basis = tuple({name: c for name, c in zip(fr.names, vec) if c} for vec in space.basis)
    for b in basis:
        if not divergence_defect(fr.combination(b), y(n)).is_zero():
            raise AssertionError("divergence basis element has nonzero defect")
    return SubalgebraReport("Divergence", n, basis, defect, system,
                            extrapolation=n > VERIFIED_MAX_ORDER)


def variational_algebra(n: int, L: DiffPoly | None = None) -> SubalgebraReport:
    """Variational symmetries, searched within the divergence subalgebra."""
    if n % 2:
        raise PreconditionError("odd-order equations have no variational symmetries here")
    if L is None:
        L = lagrangian(n)
    fr = frame(n)
    div = divergence_algebra(n)
    param_of = dict(zip(fr.names, generator_params(n)))
    tags = []
    for i, b in enumerate(div.basis):
        if len(b) == 1 and next(iter(b.values())) == 1:
            tags.append(param_of[next(iter(b))])
        else:
            tags.append(f"t{i}")
    w = VectorField(DiffPoly(), DiffPoly())
    for t, b in zip(tags, div.basis):
        w = w + fr.combination(b) * param(t)
    defect = variational_defect(w, L, n)
    system = extract_system(defect, tags)
    space = null_space(system)
    basis = []
    for vec in space.basis:
        combo: dict[str, Fraction] = {}
        for s, b in zip(vec, div.basis):
            for name, c in b.items():
                combo[name] = combo.get(name, Fraction(0)) + s * c
        basis.append({name: combo[name] for name in fr.names if combo.get(name)})
    for b in basis:
        if not variational_defect(fr.combination(b), L, n).is_zero():
            raise AssertionError("variational basis element has nonzero defect")
    return SubalgebraReport("Variational", n, tuple(basis), defect, system,
                            extrapolation=n > VERIFIED_MAX_ORDER)


# -- first integrals --------------------------------------------------------

@dataclass(frozen=True)
class FirstIntegral:
    source: str
    field: VectorField
    n: int
    expr: DiffPoly

    def conservation_law(self) -> DiffPoly:
        return characteristic(self.field) * y(self.n)

    def is_consistent(self) -> bool:
        return self.expr.total_derivative() == self.conservation_law()


def first_integral(v: VectorField, n: int, source: str = "") -> FirstIntegral:
    """First integral of ``y_n = 0`` attached to a divergence symmetry."""
    if not divergence_defect(v, y(n)).is_zero():
        raise NotExactError(f"{source or 'field'} is not a divergence symmetry of y{n} = 0")
    expr = invert_total_derivative(characteristic(v) * y(n))
    return FirstIntegral(source, v, n, expr)


def closed_form(kind: str, n: int, k: int | None = None,
                coeffs: Sequence[DiffPoly | Fraction] | None = None) -> DiffPoly:
    """Closed-form first integrals.

    ``kind`` is ``"Vk"`` (needs ``k``), ``"W1"`` (generic combination of the
    solution symmetries, coefficients default to parameters ``a0..``),
    ``"W2"`` (alpha F + beta G + gamma H, n in {4, 6, 8}) or ``"Wy"``
    (odd n).
    """
    if kind == "Vk":
        if k is None or not 0 <= k < n:
            raise UnsupportedError(f"V_k needs 0 <= k < {n}")
        out = DiffPoly()
        for j in range(k + 1):
            c = (-1) ** j * factorial(j) * comb(k, j)
            out = out + (x(k - j) * y(n - 1 - j)).scale(c)
        return out
    if kind == "W1":
        if coeffs is None:
            coeffs = [param(f"a{i}") for i in range(n)]
        if len(coeffs) != n:
            raise UnsupportedError(f"W1 needs {n} coefficients")
        P = sum((DiffPoly.coerce(c) * x(i) for i, c in enumerate(coeffs)), DiffPoly())
        out = DiffPoly()
        for i in range(n):
            term = P.total_derivative_n(i) * y(n - 1 - i)
            out = out + (-term if i % 2 else term)
        return out
    if kind == "W2":
        if n not in _W2_FIRST_INTEGRALS:
            raise UnsupportedError(f"no closed form for alpha F + beta G + gamma H at n = {n}")
        return _parse(_W2_FIRST_INTEGRALS[n])
    if kind == "Wy":
        if n % 2 == 0 or n < 1:
            raise UnsupportedError("W_y first integral exists for odd n only")
        m = (n - 1) // 2
        out = y(m, 2).scale(Fraction((-1) ** m, 2))
        for j in range((n - 3) // 2 + 1):
            term = y(n - 1 - j) * y(j)
            out = out + (-term if j % 2 else term)
        return out
    raise UnsupportedError(f"unknown closed-form kind {kind!r}")


def reference_variational_defect(n: int) -> DiffPoly:
    if n not in _VARIATIONAL_DEFECTS:
        raise UnsupportedError(f"no reference variational defect for n = {n}")
    return _parse(_VARIATIONAL_DEFECTS[n])


def solution_jets(n: int, expr_order: int, prefix: str = "c") -> dict:
    """Jets of the general solution ``sum c_i x^i`` of ``y_n = 0``."""
    sol = sum((param(f"{prefix}{i}") * x(i) for i in range(n)), DiffPoly())
    out = {}
    for j in range(max(expr_order, 0) + 1):
        out[yvar(j)] = sol
        sol = sol.total_derivative()
    return out


def _fresh_prefix(expr: DiffPoly) -> str:
    tags = {v.index for v in expr.variables() if v.kind == PARAM}
    prefix = "c"
    while any(str(t).startswith(prefix) for t in tags):
        prefix = "c_" + prefix
    return prefix


def constancy_value(F: FirstIntegral) -> DiffPoly:
    """Value of the first integral on the general solution."""
    prefix = _fresh_prefix(F.expr)
    return F.expr.substitute(solution_jets(F.n, F.expr.jet_order(JET_Y), prefix))


def constancy_check(F: FirstIntegral) -> bool:
    """True iff the expression is x-free on every solution of ``y_n = 0``."""
    return not constancy_value(F).contains(X)


def differs_by_constant(a: DiffPoly, b: DiffPoly) -> bool:
    return (a - b).is_constant()


# -- conjecture verifier ----------------------------------------------------

@dataclass(frozen=True)
class ConjectureItem:
    n: int
    check: str
    passed: bool
    extrapolation: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass(frozen=True)
class ConjectureReport:
    n_max: int
    items: tuple[ConjectureItem, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def failures(self) -> list[ConjectureItem]:
        return [i for i in self.items if not i.passed]


def _expected_divergence_names(n: int) -> list[str]:
    names = [f"V_{k}" for k in range(n)]
    if n % 2:
        return names + ["W_y"]
    return names + [f"F_{n}", f"G_{n}", f"H_{n}"]


def _expected_variational_names(n: int) -> list[str]:
    return [f"V_{k}" for k in range(n // 2)] + [f"F_{n}", f"G_{n}"]


def _rank(polys: Sequence[DiffPoly]) -> int:
    monos = sorted({m for p in polys for m, _ in p.items()}, key=repr)
    matrix = [[p.terms.get(m, Fraction(0)) for m in monos] for p in polys]
    _, pivots = rref(matrix, len(monos))
    return len(pivots)


def _order_items(n: int) -> list[ConjectureItem]:
    extra = n > VERIFIED_MAX_ORDER
    items: list[ConjectureItem] = []

    def add(check: str, ok: bool, detail: str = "") -> None:
        items.append(ConjectureItem(n, check, bool(ok), extra, detail))

    fr = frame(n)
    add("frame", len(fr) == n + 4, f"{len(fr)} point symmetries")

    delta = y(n)
    parity = adjoint_parity(delta)
    want = Parity.SKEW_ADJOINT if n % 2 else Parity.SELF_ADJOINT
    add("adjoint-parity", parity is want, parity.value)

    dW = divergence_defect(fr.W, delta)
    add("homogeneity-symmetry", dW == (DiffPoly() if n % 2 else delta.scale(2)), str(dW))

    bad = [k for k in range(n) if not divergence_defect(fr.V(k), delta).is_zero()]
    add("solution-symmetries", not bad, f"nonzero defect for V_k, k in {bad}" if bad else "")

    w2 = fr.F * param("alpha") + fr.G * param("beta") + fr.H * param("gamma")
    if n % 2:
        top = divergence_defect(w2, delta).coefficients_in(yvar(n + 1)).get(1, DiffPoly())
        want_top = _parse("2*(alpha + 2*beta*x - gamma*x^2)")
        add("sl2-top-coefficient", top == want_top, str(top))
    else:
        dd = divergence_defect(w2 + fr.W * param("lambda"), delta)
        add("generic-divergence-defect", dd == (param("lambda") * delta).scale(2), str(dd))

    div = divergence_algebra(n)
    try:
        got = div.basis_names()
    except ValueError:
        got = None
    nullity = n + 1 if n % 2 else n + 3
    add("divergence-algebra", got == _expected_divergence_names(n) and div.dimension == nullity,
        f"basis {got}")

    if n % 2 == 0:
        var = variational_algebra(n)
        try:
            vgot = var.basis_names()
        except ValueError:
            vgot = None
        add("variational-algebra",
            vgot == _expected_variational_names(n) and var.dimension == n // 2 + 2,
            f"basis {vgot}")
        if n in _VARIATIONAL_DEFECTS:
            add("variational-defect-reference", var.defect_before == reference_variational_defect(n),
                str(var.defect_before))

    integrals: list[FirstIntegral] = []
    vk_ok = True
    for k in range(n):
        F = first_integral(fr.V(k), n, f"V_{k}")
        integrals.append(F)
        vk_ok &= differs_by_constant(F.expr, closed_form("Vk", n, k=k))
        vk_ok &= F.expr.total_derivative() == x(k) * delta
    add("first-integrals-Vk", vk_ok)
    rank = _rank([F.expr for F in integrals])
    add("first-integrals-Vk-independent", rank == n, f"rank {rank}")

    w1 = fr.combination({f"V_{k}": param(f"a{k}") for k in range(n)})
    Fw1 = first_integral(w1, n, "w1")
    integrals.append(Fw1)
    add("first-integral-w1", differs_by_constant(Fw1.expr, closed_form("W1", n)))

    if n % 2:
        Fwy = first_integral(fr.W, n, "W_y")
        integrals.append(Fwy)
        add("first-integral-Wy", differs_by_constant(Fwy.expr, closed_form("Wy", n)),
            str(Fwy.expr))
    else:
        Fw2 = first_integral(w2, n, "w2")
        integrals.append(Fw2)
        if n in _W2_FIRST_INTEGRALS:
            add("first-integral-w2", differs_by_constant(Fw2.expr, closed_form("W2", n)))

    bad_const = [F.source for F in integrals if not constancy_check(F)]
    add("constancy", not bad_const, f"not constant: {bad_const}" if bad_const else "")
    return items


def verify_conjecture(n_max: int = VERIFIED_MAX_ORDER, ceiling: int = DEFAULT_CEILING,
                      n_min: int = 3) -> ConjectureReport:
    """Check every part of the classification order by order for n_min..n_max."""
    if n_max > ceiling:
        raise PreconditionError(f"n_max = {n_max} exceeds the ceiling {ceiling}")
    items: list[ConjectureItem] = []
    for n in range(n_min, n_max + 1):
        items.extend(_order_items(n))
    return ConjectureReport(n_max, tuple(items))


def sl2_brackets(n: int) -> dict[str, VectorField]:
    fr = frame(n)
    return {
        "[F,G]": lie_bracket(fr.F, fr.G),
        "[F,H]": lie_bracket(fr.F, fr.H),
        "[G,H]": lie_bracket(fr.G, fr.H),
    }
