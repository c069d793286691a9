"""Exact jet-space calculus for the variational symmetries and first
integrals of linear ODEs of maximal symmetry."""

from .diffpoly import DiffPoly, Var, const, param, q, x, y
from .errors import JetcalcError

__version__ = "0.1.0"

__all__ = ["DiffPoly", "Var", "const", "param", "q", "x", "y", "JetcalcError", "__version__"]
