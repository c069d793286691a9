"""Recursive-descent parser for the plain expression grammar.

::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' posint)?
    atom   := rational | 'x' | 'y' posint? | 'q' posint? | ident | '(' expr ')'

``y`` alone is ``y0`` and ``q`` alone is ``q0``; any other identifier is a
parameter.  The same machinery parses vector specs, where uppercase names
resolve to frame generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..diffpoly import DiffPoly, X, pvar, qvar, yvar
from ..errors import JetLimitError, JetcalcError, ParseError

__all__ = ["parse_expression", "tokenize", "Parser", "resolve_expression_name"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")
_JET = re.compile(r"([yq])([0-9]*)\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


def resolve_expression_name(name: str, pos: int, src: str = "") -> DiffPoly:
    if name == "x":
        return DiffPoly.var(X)
    m = _JET.match(name)
    try:
        if m:
            order = int(m.group(2)) if m.group(2) else 0
            v = yvar(order) if m.group(1) == "y" else qvar(order)
            return DiffPoly.var(v)
        return DiffPoly.var(pvar(name))
    except JetLimitError as exc:
        raise ParseError(str(exc), pos, src) from exc
    except ValueError as exc:
        raise ParseError(f"invalid symbol {name!r}", pos, src) from exc


class Parser:
    """Parses one source string; ``resolve`` maps identifiers to values."""

    def __init__(self, src: str, resolve: Callable[[str, int], object] | None = None):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0
        self.resolve = resolve or (lambda name, pos: resolve_expression_name(name, pos, src))

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.src)

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self):
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def _combine(self, fn, tok: Token):
        try:
            return fn()
        except ParseError:
            raise
        except TypeError as exc:
            raise self.error(f"invalid operands for {tok.text!r}", tok) from exc
        except JetcalcError as exc:
            raise self.error(str(exc), tok) from exc

    def expr(self):
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.take().text == "-" else 1
        start = self.tok
        value = self.term()
        if sign < 0:
            value = self._combine(lambda: -value, start)
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take()
            rhs = self.term()
            if op.text == "+":
                value = self._combine(lambda: value + rhs, op)
            else:
                value = self._combine(lambda: value - rhs, op)
        return value

    def term(self):
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            op = self.take()
            rhs = self.factor()
            value = self._combine(lambda: _mul(value, rhs), op)
        return value

    def factor(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self.take()
            t = self.tok
            if t.kind != "num" or "/" in t.text or int(t.text) < 1:
                raise self.error("expected positive integer exponent", t)
            self.take()
            if not isinstance(base, DiffPoly):
                raise self.error("only expressions can be raised to a power", op)
            base = base ** int(t.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return DiffPoly.const(Fraction(t.text))
        if t.kind == "ident":
            self.take()
            return self.resolve(t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self.take()
            value = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                raise self.error("expected ')'")
            self.take()
            return value
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")


def _mul(a, b):
    if isinstance(a, DiffPoly) and not isinstance(b, DiffPoly):
        return b.__rmul__(a)
    return a * b


def parse_expression(src: str) -> DiffPoly:
    """Parse ``src`` into a canonical :class:`DiffPoly`."""
    value = Parser(src).parse()
    assert isinstance(value, DiffPoly)
    return value
