"""Parsing, rendering and JSON serialization."""

from .parse import parse_expression
from .render import render_latex, render_text

__all__ = ["parse_expression", "render_text", "render_latex",
           "parse_vector_spec", "to_json", "from_json", "SCHEMA"]


def __getattr__(name):
    # jsonio and the vector-spec parser depend on catalog, which itself
    # parses fixtures; import them lazily to keep the graph acyclic.
    if name in {"to_json", "from_json", "SCHEMA", "to_document", "from_document",
                "JSON_SCHEMA", "validate_document"}:
        from . import jsonio
        return getattr(jsonio, name)
    if name == "parse_vector_spec":
        from .vectorspec import parse_vector_spec
        return parse_vector_spec
    raise AttributeError(name)
