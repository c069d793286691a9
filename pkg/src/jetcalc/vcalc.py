"""Variational calculus on differential polynomials in one dependent variable.

Only ``y`` is varied; ``q``-jets and parameters ride along as spectators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .diffpoly import JET_Q, JET_Y, X, DiffPoly, Var, yvar
from .errors import NonlinearError, NotExactError, TopJetNonlinearError

__all__ = [
    "LinDiffOp", "Parity", "euler", "frechet", "adjoint_apply",
    "adjoint_parity", "is_exact", "invert_total_derivative", "reduce_order",
]


@dataclass(frozen=True)
class LinDiffOp:
    """``sum_k coeff_k * D^k`` with coefficients sorted by order."""

    coeffs: tuple[tuple[DiffPoly, int], ...]

    def __post_init__(self):
        merged: dict[int, DiffPoly] = {}
        for c, k in self.coeffs:
            merged[k] = merged.get(k, DiffPoly()) + c
        clean = tuple((merged[k], k) for k in sorted(merged) if merged[k])
        object.__setattr__(self, "coeffs", clean)

    @property
    def order(self) -> int:
        return self.coeffs[-1][1] if self.coeffs else -1

    def coefficient(self, k: int) -> DiffPoly:
        for c, j in self.coeffs:
            if j == k:
                return c
        return DiffPoly()

    def apply(self, f: DiffPoly) -> DiffPoly:
        out = DiffPoly()
        deriv = f
        done = 0
        for c, k in self.coeffs:
            deriv = deriv.total_derivative_n(k - done)
            done = k
            out = out + c * deriv
        return out

    def adjoint(self) -> "LinDiffOp":
        """Formal adjoint ``sum_k (-D)^k . c_k``, expanded by Leibniz."""
        out: list[tuple[DiffPoly, int]] = []
        for c, k in self.coeffs:
            sign = -1 if k % 2 else 1
            deriv = c
            for i in range(k + 1):
                # (-D)^k (c g) = (-1)^k sum_i C(k,i) D^i(c) D^(k-i)(g)
                out.append((deriv.scale(sign * comb(k, i)), k - i))
                deriv = deriv.total_derivative()
        return LinDiffOp(tuple(out))

    def __neg__(self) -> "LinDiffOp":
        return LinDiffOp(tuple((-c, k) for c, k in self.coeffs))


class Parity(enum.Enum):
    SELF_ADJOINT = "SelfAdjoint"
    SKEW_ADJOINT = "SkewAdjoint"
    NEITHER = "Neither"


def _signed_derivative(p: DiffPoly, j: int) -> DiffPoly:
    """``(-D)^j p``."""
    out = p.total_derivative_n(j)
    return -out if j % 2 else out


def euler(L: DiffPoly) -> DiffPoly:
    """Euler operator ``sum_j (-D)^j dL/dy_j`` with respect to ``y``."""
    out = DiffPoly()
    for j in range(L.jet_order(JET_Y) + 1):
        out = out + _signed_derivative(L.partial(yvar(j)), j)
    return out


def frechet(F: DiffPoly) -> LinDiffOp:
    return LinDiffOp(tuple((F.partial(yvar(j)), j)
                           for j in range(F.jet_order(JET_Y) + 1)))


def adjoint_apply(F: DiffPoly, g: DiffPoly) -> DiffPoly:
    """``D_F^*(g) = sum_j (-D)^j (dF/dy_j * g)``."""
    out = DiffPoly()
    for j in range(F.jet_order(JET_Y) + 1):
        dF = F.partial(yvar(j))
        if dF:
            out = out + _signed_derivative(dF * g, j)
    return out


def adjoint_parity(delta: DiffPoly) -> Parity:
    """Classify a linear equation's operator as self-, skew- or non-adjoint.

    The decision compares operator coefficients of ``D_delta`` and its
    formal adjoint, so it is exact.
    """
    op = frechet(delta)
    for c, _ in op.coeffs:
        if c.has_kind(JET_Y):
            raise NonlinearError("adjoint parity needs an equation linear in y")
    adj = op.adjoint()
    if adj == op:
        return Parity.SELF_ADJOINT
    if adj == -op:
        return Parity.SKEW_ADJOINT
    return Parity.NEITHER


def is_exact(e: DiffPoly) -> bool:
    """True iff ``e`` lies in the kernel of the Euler operator."""
    return euler(e).is_zero()


def _antiderivative(a: DiffPoly, v: Var) -> DiffPoly:
    """Integrate a polynomial in ``v`` termwise, no constant."""
    out: dict = {}
    for mono, c in a.items():
        for i, (w, e) in enumerate(mono):
            if w == v:
                m = mono[:i] + ((v, e + 1),) + mono[i + 1:]
                out[m] = c / (e + 1)
                break
        else:
            m = tuple(sorted(mono + ((v, 1),)))
            out[m] = c
    return DiffPoly(out)


def _peel_top_jet(e: DiffPoly, top: Var, err: type[Exception]) -> DiffPoly:
    """Return ``A`` with ``e - D(A)`` free of ``top``; ``e`` must be linear in it."""
    parts = e.coefficients_in(top)
    if any(k > 1 for k in parts):
        raise err(f"expression is nonlinear in its top jet {top.name}")
    a = parts.get(1, DiffPoly())
    below = Var(top.kind, top.index - 1)
    return _antiderivative(a, below)


def invert_total_derivative(e: DiffPoly) -> DiffPoly:
    """Find ``F`` with ``D(F) = e``; integration constants are dropped.

    Top jets are integrated away by parts, first those of ``y`` and then
    those of ``q``; what remains is a polynomial in ``x`` and parameters.
    """
    target = e
    result = DiffPoly()
    for kind in (JET_Y, JET_Q):
        while True:
            m = e.jet_order(kind)
            if m < 0:
                break
            if m == 0:
                raise NotExactError(f"residual depends on {Var(kind, 0).name} "
                                    "without higher jets")
            A = _peel_top_jet(e, Var(kind, m), NotExactError)
            result = result + A
            e = e - A.total_derivative()
            if e.jet_order(kind) >= m:
                raise NotExactError("top jet could not be integrated away")
    result = result + _antiderivative(e, X)
    result = result.drop_constants()
    if result.total_derivative() != target:
        raise NotExactError("expression is not a total derivative")
    return result


def reduce_order(L: DiffPoly, target: int) -> DiffPoly:
    """Subtract null Lagrangians until the jet order of ``L`` is <= target."""
    while True:
        m = L.jet_order(JET_Y)
        if m <= target:
            return L
        A = _peel_top_jet(L, yvar(m), TopJetNonlinearError)
        L = L - A.total_derivative()
        if L.jet_order(JET_Y) >= m:
            raise TopJetNonlinearError(f"could not lower order below {m}")
