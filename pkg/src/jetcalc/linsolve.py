"""Exact rational linear algebra for parameter constraint systems.

A defect that is linear in a set of unknown parameters splits into one
linear form per monomial in the remaining symbols; the unknowns making the
defect vanish are the null space of that system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diffpoly import DiffPoly, monomial_key, pvar
from .errors import NonlinearInParamsError

__all__ = ["ParamSystem", "SolutionSpace", "extract_system", "null_space", "rref"]


@dataclass(frozen=True)
class ParamSystem:
    unknowns: tuple[str, ...]
    rows: tuple[dict, ...] = ()  # each row maps unknown tag -> Fraction
    constants: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if not self.constants:
            object.__setattr__(self, "constants", tuple(Fraction(0) for _ in self.rows))

    def matrix(self) -> list[list[Fraction]]:
        return [[Fraction(r.get(u, 0)) for u in self.unknowns] for r in self.rows]

    def is_homogeneous(self) -> bool:
        return all(c == 0 for c in self.constants)


@dataclass(frozen=True)
class SolutionSpace:
    unknowns: tuple[str, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    rank: int

    @property
    def nullity(self) -> int:
        return len(self.basis)

    def assignments(self) -> list[dict[str, Fraction]]:
        return [{u: c for u, c in zip(self.unknowns, vec) if c} for vec in self.basis]


def extract_system(defect: DiffPoly, unknowns: Sequence[str]) -> ParamSystem:
    """Collect the coefficient of every non-unknown monomial as a linear form."""
    unknown_vars = {pvar(u): u for u in unknowns}
    grouped: dict[tuple, dict[str, Fraction]] = {}
    for mono, c in defect.items():
        hits = [(v, e) for v, e in mono if v in unknown_vars]
        if len(hits) != 1 or hits[0][1] != 1:
            raise NonlinearInParamsError(
                f"defect term {DiffPoly({mono: c})} is not linear homogeneous in the unknowns")
        rest = tuple((v, e) for v, e in mono if v not in unknown_vars)
        tag = unknown_vars[hits[0][0]]
        row = grouped.setdefault(rest, {})
        row[tag] = row.get(tag, Fraction(0)) + c
    rows = [grouped[k] for k in sorted(grouped, key=monomial_key)]
    return ParamSystem(tuple(unknowns), tuple(r for r in rows if any(r.values())))


def rref(matrix: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; pivots chosen as the first nonzero entry."""
    m = [list(r) for r in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def null_space(sys: ParamSystem) -> SolutionSpace:
    """Null space of a homogeneous system, one basis vector per free unknown."""
    if not sys.is_homogeneous():
        raise ValueError("null_space needs a homogeneous system")
    k = len(sys.unknowns)
    reduced, pivots = rref(sys.matrix(), k)
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * k
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return SolutionSpace(sys.unknowns, tuple(basis), len(pivots))


def assignment_bindings(assignment: dict[str, Fraction], unknowns: Sequence[str]):
    """Bindings that send every unknown to its value in ``assignment``."""
    return {pvar(u): DiffPoly.const(assignment.get(u, 0)) for u in unknowns}
