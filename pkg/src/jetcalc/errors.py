"""Exception types raised by the engine."""

from __future__ import annotations


class JetcalcError(Exception):
    """Base class for every error raised by jetcalc."""


class JetLimitError(JetcalcError, ValueError):
    """A jet variable would exceed the configured order limit."""


class NotExactError(JetcalcError, ValueError):
    """The expression is not a total derivative."""


class TopJetNonlinearError(JetcalcError, ValueError):
    """Order reduction met a Lagrangian that is nonlinear in its top jet."""


class NonlinearError(JetcalcError, ValueError):
    """An operation that needs a linear equation received a nonlinear one."""


class NonlinearInParamsError(JetcalcError, ValueError):
    """A defect is not linear and homogeneous in the requested unknowns."""


class UnsupportedError(JetcalcError, ValueError):
    """The requested (order, form) combination has no fixture or formula."""


class PreconditionError(JetcalcError, ValueError):
    """An operation was called outside its documented domain."""


class SpecIndexError(JetcalcError, IndexError):
    """A vector spec referenced a generator index outside the frame."""


class ParseError(JetcalcError, ValueError):
    """Syntax error in an expression or vector spec."""

    def __init__(self, message: str, position: int, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(f"{message} at offset {position}")


class MalformedDocumentError(JetcalcError, ValueError):
    """A JSON document does not follow the jetcalc schema."""
