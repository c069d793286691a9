"""Vector specs: linear combinations of frame generators.

``"2*V0 - 3*G + W"`` or ``"a2*V2 + gamma*H"``; ``V<k>``, ``W``, ``F``,
``G``, ``H`` name the generators of the order-n frame, lowercase
identifiers are parameters.
"""

from __future__ import annotations

import re

from ..diffpoly import DiffPoly
from ..errors import ParseError, SpecIndexError
from ..symmetry import VectorField
from .parse import Parser, resolve_expression_name

__all__ = ["parse_vector_spec"]

_GEN = re.compile(r"V([0-9]+)\Z")


def parse_vector_spec(src: str, n: int) -> VectorField:
    from ..catalog import frame

    fr = frame(n)

    def resolve(name: str, pos: int):
        m = _GEN.match(name)
        if m:
            k = int(m.group(1))
            if k >= n:
                raise SpecIndexError(f"V{k} is out of range for order {n} (offset {pos})")
            return fr.V(k)
        if name in ("W", "W_y", "Wy"):
            return fr.W
        if name == "F":
            return fr.F
        if name == "G":
            return fr.G
        if name == "H":
            return fr.H
        if name[0].isupper():
            raise ParseError(f"unknown symbol {name!r}", pos, src)
        value = resolve_expression_name(name, pos, src)
        if not value.is_constant():
            raise ParseError(f"{name!r} is not a constant coefficient", pos, src)
        return value

    value = Parser(src, resolve).parse()
    if isinstance(value, DiffPoly):
        if value.is_zero():
            return VectorField(DiffPoly(), DiffPoly())
        raise ParseError("vector spec has a term without a generator", 0, src)
    return value
