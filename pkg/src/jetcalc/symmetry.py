"""Point vector fields on (x, y), their prolongations, and symmetry defects."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diffpoly import JET_Q, JET_Y, X, DiffPoly, yvar
from .errors import PreconditionError
from .vcalc import adjoint_apply

__all__ = [
    "VectorField", "ProlongedField", "characteristic", "prolong",
    "lie_bracket", "variational_defect", "divergence_defect",
    "is_point_symmetry",
]

_Y0 = yvar(0)


def _check_point(p: DiffPoly, what: str) -> DiffPoly:
    for v in p.variables():
        if v.kind == JET_Q or (v.kind == JET_Y and v.index > 0):
            raise ValueError(f"{what} of a point field may depend only on x, y and parameters")
    return p


@dataclass(frozen=True)
class VectorField:
    """``xi(x, y) d/dx + psi(x, y) d/dy``."""

    xi: DiffPoly
    psi: DiffPoly

    def __post_init__(self):
        object.__setattr__(self, "xi", _check_point(DiffPoly.coerce(self.xi), "xi"))
        object.__setattr__(self, "psi", _check_point(DiffPoly.coerce(self.psi), "psi"))

    def __add__(self, other: "VectorField") -> "VectorField":
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.xi + other.xi, self.psi + other.psi)

    def __sub__(self, other: "VectorField") -> "VectorField":
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.xi - other.xi, self.psi - other.psi)

    def __neg__(self) -> "VectorField":
        return VectorField(-self.xi, -self.psi)

    def __mul__(self, c) -> "VectorField":
        if isinstance(c, (int, Fraction)):
            c = DiffPoly.const(c)
        if not isinstance(c, DiffPoly):
            return NotImplemented
        if not c.is_constant():
            raise TypeError("vector fields may only be scaled by constants")
        return VectorField(self.xi * c, self.psi * c)

    __rmul__ = __mul__

    def __call__(self, f: DiffPoly) -> DiffPoly:
        """Act on a function of (x, y) as a derivation."""
        return self.xi * f.partial(X) + self.psi * f.partial(_Y0)

    def is_zero(self) -> bool:
        return self.xi.is_zero() and self.psi.is_zero()

    def substitute_params(self, bindings) -> "VectorField":
        return VectorField(self.xi.substitute(bindings), self.psi.substitute(bindings))


@dataclass(frozen=True)
class ProlongedField:
    """``xi d/dx + sum_j phi[j] d/dy_j``."""

    xi: DiffPoly
    phi: tuple[DiffPoly, ...]

    @property
    def order(self) -> int:
        return len(self.phi) - 1

    def apply(self, f: DiffPoly) -> DiffPoly:
        top = f.jet_order(JET_Y)
        if top > self.order:
            raise PreconditionError(f"prolongation of order {self.order} cannot act on jets of order {top}")
        out = self.xi * f.partial(X)
        for j in range(top + 1):
            df = f.partial(yvar(j))
            if df:
                out = out + self.phi[j] * df
        return out


def characteristic(v: VectorField) -> DiffPoly:
    """``Q = psi - xi * y1``."""
    return v.psi - v.xi * DiffPoly.var(yvar(1))


def prolong(v: VectorField, m: int) -> ProlongedField:
    """Standard recursion ``phi[j+1] = D(phi[j]) - y_{j+1} D(xi)``."""
    yvar(m)  # enforces the jet limit
    dxi = v.xi.total_derivative()
    phi = [v.psi]
    for j in range(m):
        phi.append(phi[j].total_derivative() - DiffPoly.var(yvar(j + 1)) * dxi)
    Q = characteristic(v)
    for j, p in enumerate(phi):
        # phi[j] = D^j(Q) + xi * y_{j+1}
        if p != Q.total_derivative_n(j) + v.xi * DiffPoly.var(yvar(j + 1)):
            raise AssertionError(f"prolongation recursion broken at level {j}")
    return ProlongedField(v.xi, tuple(phi))


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    return VectorField(v(w.xi) - w(v.xi), v(w.psi) - w(v.psi))


def variational_defect(v: VectorField, L: DiffPoly, n: int) -> DiffPoly:
    """``pr v (L) + L * D(xi)``; zero iff ``v`` is a variational symmetry."""
    if n % 2:
        raise PreconditionError("variational symmetries are defined here for even order only")
    pr = prolong(v, max(L.jet_order(JET_Y), 0))
    return pr.apply(L) + L * v.xi.total_derivative()


def divergence_defect(v: VectorField, delta: DiffPoly) -> DiffPoly:
    """``D_delta^*(Q) + D_Q^*(delta)``; zero iff ``v`` is a divergence symmetry."""
    Q = characteristic(v)
    return adjoint_apply(delta, Q) + adjoint_apply(Q, delta)


def is_point_symmetry(v: VectorField, n: int) -> bool:
    """Whether ``v`` is a point symmetry of ``y_n = 0``."""
    pr = prolong(v, n)
    image = pr.apply(DiffPoly.var(yvar(n)))
    top = image.jet_order(JET_Y)
    on_solutions = image.substitute({yvar(m): DiffPoly() for m in range(n, top + 1)})
    return on_solutions.is_zero()

