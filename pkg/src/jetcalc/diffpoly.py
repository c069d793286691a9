"""Sparse differential polynomials with exact rational coefficients.

Every expression the engine handles is a polynomial in four families of
symbols:

* ``x``, the independent variable,
* ``y0, y1, ...``, the jets of the dependent variable,
* ``q0, q1, ...``, the jets of the free coefficient function ``q(x)``,
* named parameters (``alpha``, ``a3``, ...) which are constants under the
  total derivative.

A :class:`DiffPoly` stores ``{monomial: Fraction}`` with no zero
coefficients, so structural equality is semantic equality.  Monomials are
sorted tuples of ``(Var, exponent)`` pairs.
"""

from __future__ import annotations

import contextlib
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import JetLimitError

__all__ = [
    "Var", "DiffPoly", "Monomial", "Rational",
    "INDEP", "JET_Y", "JET_Q", "PARAM",
    "X", "yvar", "qvar", "pvar",
    "x", "y", "q", "param", "const",
    "add", "mul", "scale", "partial", "total_derivative", "substitute",
    "get_jet_limit", "set_jet_limit", "jet_limit",
    "monomial_key", "monomial_degree",
]

INDEP, JET_Y, JET_Q, PARAM = 0, 1, 2, 3

_DEFAULT_JET_LIMIT = 64
_jet_limit = _DEFAULT_JET_LIMIT

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = re.compile(r"(x|y[0-9]*|q[0-9]*)\Z")


def get_jet_limit() -> int:
    return _jet_limit


def set_jet_limit(limit: int) -> None:
    """Set the largest jet order the engine will construct."""
    global _jet_limit
    if limit < 1:
        raise ValueError("jet limit must be positive")
    _jet_limit = int(limit)


@contextlib.contextmanager
def jet_limit(limit: int) -> Iterator[None]:
    """Temporarily override the jet limit."""
    old = _jet_limit
    set_jet_limit(limit)
    try:
        yield
    finally:
        set_jet_limit(old)


class Var(NamedTuple):
    """A symbol: ``kind`` is one of INDEP, JET_Y, JET_Q, PARAM.

    For jets ``index`` is the derivative order, for parameters it is the
    tag.  Tuple ordering is the engine's variable order.
    """

    kind: int
    index: Union[int, str]

    @property
    def is_param(self) -> bool:
        return self.kind == PARAM

    @property
    def name(self) -> str:
        if self.kind == INDEP:
            return "x"
        if self.kind == JET_Y:
            return "y" if self.index == 0 else f"y{self.index}"
        if self.kind == JET_Q:
            return "q" if self.index == 0 else f"q{self.index}"
        return str(self.index)

    def __repr__(self) -> str:
        return f"Var({self.name})"


def _check_order(order: int) -> int:
    if not isinstance(order, int) or order < 0:
        raise ValueError(f"jet order must be a nonnegative integer, got {order!r}")
    if order > _jet_limit:
        raise JetLimitError(f"jet order {order} exceeds limit {_jet_limit}")
    return order


X = Var(INDEP, 0)


def yvar(order: int) -> Var:
    return Var(JET_Y, _check_order(order))


def qvar(order: int) -> Var:
    return Var(JET_Q, _check_order(order))


def pvar(tag: str) -> Var:
    if not isinstance(tag, str) or not _IDENT.match(tag) or _RESERVED.match(tag):
        raise ValueError(f"invalid parameter tag {tag!r}")
    return Var(PARAM, tag)


Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var
Rational = Union[int, Fraction]

_SENTINEL = (99,)


def monomial_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def monomial_key(mono: Monomial) -> tuple:
    """Sort key giving descending graded-lex order (x > y0 > y1 > ... )."""
    return (-monomial_degree(mono), tuple((v, -e) for v, e in mono) + (_SENTINEL,))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_drop(mono: Monomial, i: int) -> Monomial:
    """Lower the exponent of the i-th factor by one."""
    v, e = mono[i]
    if e == 1:
        return mono[:i] + mono[i + 1:]
    return mono[:i] + ((v, e - 1),) + mono[i + 1:]


class DiffPoly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "DiffPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> "DiffPoly":
        return cls({(): c})

    @classmethod
    def var(cls, v: Var, power: int = 1) -> "DiffPoly":
        if power < 0:
            raise ValueError("negative power")
        return cls._raw({((v, power),) if power else (): Fraction(1)})

    @staticmethod
    def coerce(other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPoly.const(other)
        return NotImplemented

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in engine order (descending graded lex)."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[Var]:
        return {v for mono in self._terms for v, _ in mono}

    def jet_order(self, kind: int = JET_Y) -> int:
        """Largest jet order of the given kind present, or -1."""
        orders = [v.index for v in self.variables() if v.kind == kind]
        return max(orders) if orders else -1

    def degree_in(self, v: Var) -> int:
        return max((e for mono in self._terms for w, e in mono if w == v), default=0)

    def contains(self, v: Var) -> bool:
        return any(w == v for mono in self._terms for w, _ in mono)

    def has_kind(self, kind: int) -> bool:
        return any(v.kind == kind for mono in self._terms for v, _ in mono)

    def is_constant(self) -> bool:
        """True when only parameters occur (a constant for ``D``)."""
        return all(v.kind == PARAM for mono in self._terms for v, _ in mono)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def as_rational(self) -> Fraction:
        if any(self._terms.keys() - {()}):
            raise ValueError(f"{self} is not a rational constant")
        return self.constant_term()

    def coefficients_in(self, v: Var) -> dict[int, "DiffPoly"]:
        """Split as ``sum_k c_k * v**k`` and return ``{k: c_k}``."""
        parts: dict[int, dict] = {}
        for mono, c in self._terms.items():
            k = 0
            rest = mono
            for i, (w, e) in enumerate(mono):
                if w == v:
                    k = e
                    rest = mono[:i] + mono[i + 1:]
                    break
            parts.setdefault(k, {})[rest] = c
        return {k: DiffPoly._raw(t) for k, t in parts.items()}

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = DiffPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "DiffPoly":
        other = DiffPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for mono, c in small.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "DiffPoly":
        return self

    def __sub__(self, other) -> "DiffPoly":
        other = DiffPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DiffPoly":
        return (-self) + other

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = DiffPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = DiffPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational) -> "DiffPoly":
        c = Fraction(c)
        if not c:
            return DiffPoly._raw({})
        return DiffPoly._raw({m: v * c for m, v in self._terms.items()})

    # -- calculus ---------------------------------------------------------

    def partial(self, v: Var) -> "DiffPoly":
        """Formal partial derivative, all other symbols independent."""
        out: dict = {}
        for mono, c in self._terms.items():
            for i, (w, e) in enumerate(mono):
                if w == v:
                    m = _mono_drop(mono, i)
                    out[m] = out.get(m, 0) + c * e
                    break
        return DiffPoly({m: c for m, c in out.items()})

    def total_derivative(self) -> "DiffPoly":
        """``D_x``: x -> 1, y_j -> y_{j+1}, q_j -> q_{j+1}, params -> 0."""
        out: dict = {}
        for mono, c in self._terms.items():
            for i, (v, e) in enumerate(mono):
                if v.kind == PARAM:
                    continue
                rest = _mono_drop(mono, i)
                if v.kind == JET_Y:
                    rest = _mono_mul(rest, ((yvar(v.index + 1), 1),))
                elif v.kind == JET_Q:
                    rest = _mono_mul(rest, ((qvar(v.index + 1), 1),))
                out[rest] = out.get(rest, 0) + c * e
        return DiffPoly(out)

    def total_derivative_n(self, k: int) -> "DiffPoly":
        p = self
        for _ in range(k):
            if not p:
                break
            p = p.total_derivative()
        return p

    def substitute(self, bindings: Mapping[Var, "DiffPoly"]) -> "DiffPoly":
        """Simultaneous substitution of symbols by polynomials."""
        if not bindings:
            return self
        binds = {v: DiffPoly.coerce(p) for v, p in bindings.items()}
        powers: dict = {}

        def power(v: Var, e: int) -> DiffPoly:
            key = (v, e)
            if key not in powers:
                powers[key] = binds[v] ** e
            return powers[key]

        out = DiffPoly._raw({})
        for mono, c in self._terms.items():
            kept = tuple((v, e) for v, e in mono if v not in binds)
            term = DiffPoly._raw({kept: c})
            for v, e in mono:
                if v in binds:
                    term = term * power(v, e)
                    if not term:
                        break
            out = out + term
        return out

    def drop_constants(self) -> "DiffPoly":
        """Remove terms that involve only parameters."""
        return DiffPoly._raw({m: c for m, c in self._terms.items()
                              if any(v.kind != PARAM for v, _ in m)})

    def __repr__(self) -> str:
        return f"DiffPoly({str(self)!r})"

    def __str__(self) -> str:
        from .textio import render_text
        return render_text(self)


# -- constructors -----------------------------------------------------------

def const(c: Rational) -> DiffPoly:
    return DiffPoly.const(c)


def x(power: int = 1) -> DiffPoly:
    return DiffPoly.var(X, power)


def y(order: int = 0, power: int = 1) -> DiffPoly:
    return DiffPoly.var(yvar(order), power)


def q(order: int = 0, power: int = 1) -> DiffPoly:
    return DiffPoly.var(qvar(order), power)


def param(tag: str) -> DiffPoly:
    return DiffPoly.var(pvar(tag))


# -- functional forms -------------------------------------------------------

def add(a: DiffPoly, b: DiffPoly) -> DiffPoly:
    return a + b


def mul(a: DiffPoly, b: DiffPoly) -> DiffPoly:
    return a * b


def scale(a: DiffPoly, c: Rational) -> DiffPoly:
    return a.scale(c)


def partial(a: DiffPoly, v: Var) -> DiffPoly:
    return a.partial(v)


def total_derivative(a: DiffPoly) -> DiffPoly:
    return a.total_derivative()


def substitute(a: DiffPoly, bindings: Mapping[Var, DiffPoly]) -> DiffPoly:
    return a.substitute(bindings)


def linear_combination(pairs: Iterable[tuple[Rational | DiffPoly, DiffPoly]]) -> DiffPoly:
    out = DiffPoly()
    for c, p in pairs:
        out = out + p * c
    return out
