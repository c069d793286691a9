"""Lossless JSON encoding of engine values, schema ``jetcalc/1``.

Every top-level document is ``{"schema": "jetcalc/1", "type": <T>,
"data": {...}}``.  Rationals are ``{"num": "<int>", "den": "<int>"}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..catalog import (ConjectureItem, ConjectureReport, FirstIntegral, Form,
                       MaximalEquation, SubalgebraReport, SymmetryFrame)
from ..diffpoly import INDEP, JET_Q, JET_Y, DiffPoly, Var, X, pvar, qvar, yvar
from ..errors import JetcalcError, MalformedDocumentError
from ..linsolve import ParamSystem
from ..symmetry import VectorField
from .render import render_text

__all__ = ["SCHEMA", "JSON_SCHEMA", "to_document", "from_document", "to_json",
           "from_json", "validate_document", "encode_poly", "decode_poly"]

SCHEMA = "jetcalc/1"

_RATIONAL = {
    "type": "object",
    "properties": {"num": {"type": "string", "pattern": r"^-?[0-9]+$"},
                   "den": {"type": "string", "pattern": r"^[1-9][0-9]*$"}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

JSON_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "https://jetcalc.invalid/schema/jetcalc-1.json",
    "type": "object",
    "required": ["schema", "type", "data"],
    "properties": {
        "schema": {"const": SCHEMA},
        "type": {"enum": ["DiffPoly", "VectorField", "SubalgebraReport", "FirstIntegral",
                          "ConjectureReport", "Equation", "Lagrangian", "SymmetryFrame",
                          "Classification", "SelftestReport"]},
        "data": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"type": {"const": t}}},
         "then": {"properties": {"data": {"$ref": f"#/$defs/{t}"}}}}
        for t in ["DiffPoly", "VectorField", "SubalgebraReport", "FirstIntegral",
                  "ConjectureReport", "Equation", "Lagrangian", "SymmetryFrame",
                  "Classification", "SelftestReport"]
    ],
    "$defs": {
        "rational": _RATIONAL,
        "var": {
            "oneOf": [
                {"type": "object", "properties": {"kind": {"const": "x"}},
                 "required": ["kind"], "additionalProperties": False},
                {"type": "object",
                 "properties": {"kind": {"enum": ["y", "q"]},
                                "order": {"type": "integer", "minimum": 0}},
                 "required": ["kind", "order"], "additionalProperties": False},
                {"type": "object",
                 "properties": {"kind": {"const": "param"}, "tag": {"type": "string"}},
                 "required": ["kind", "tag"], "additionalProperties": False},
            ]
        },
        "DiffPoly": {
            "type": "object",
            "required": ["terms"],
            "properties": {
                "text": {"type": "string"},
                "terms": {"type": "array", "items": {
                    "type": "object",
                    "required": ["coeff", "monomial"],
                    "additionalProperties": False,
                    "properties": {
                        "coeff": {"$ref": "#/$defs/rational"},
                        "monomial": {"type": "array", "items": {
                            "type": "object",
                            "required": ["var", "exp"],
                            "additionalProperties": False,
                            "properties": {"var": {"$ref": "#/$defs/var"},
                                           "exp": {"type": "integer", "minimum": 1}},
                        }},
                    },
                }},
            },
        },
        "VectorField": {
            "type": "object",
            "required": ["xi", "psi"],
            "properties": {"xi": {"$ref": "#/$defs/DiffPoly"},
                           "psi": {"$ref": "#/$defs/DiffPoly"}},
        },
        "combination": {"type": "array", "items": {
            "type": "object", "required": ["generator", "coeff"],
            "properties": {"generator": {"type": "string"},
                           "coeff": {"$ref": "#/$defs/rational"}}}},
        "ParamSystem": {
            "type": "object",
            "required": ["unknowns", "rows"],
            "properties": {
                "unknowns": {"type": "array", "items": {"type": "string"}},
                "rows": {"type": "array", "items": {"type": "array", "items": {
                    "type": "object", "required": ["unknown", "coeff"],
                    "properties": {"unknown": {"type": "string"},
                                   "coeff": {"$ref": "#/$defs/rational"}}}}},
            },
        },
        "SubalgebraReport": {
            "type": "object",
            "required": ["kind", "n", "basis", "defect_before", "constraints", "extrapolation"],
            "properties": {
                "kind": {"enum": ["Divergence", "Variational"]},
                "n": {"type": "integer", "minimum": 1},
                "basis": {"type": "array", "items": {"$ref": "#/$defs/combination"}},
                "defect_before": {"$ref": "#/$defs/DiffPoly"},
                "constraints": {"$ref": "#/$defs/ParamSystem"},
                "extrapolation": {"type": "boolean"},
            },
        },
        "FirstIntegral": {
            "type": "object",
            "required": ["source", "n", "field", "expr"],
            "properties": {
                "source": {"type": "string"},
                "n": {"type": "integer", "minimum": 1},
                "field": {"$ref": "#/$defs/VectorField"},
                "expr": {"$ref": "#/$defs/DiffPoly"},
                "verified": {"type": "boolean"},
            },
        },
        "ConjectureReport": {
            "type": "object",
            "required": ["n_max", "passed", "items"],
            "properties": {
                "n_max": {"type": "integer"},
                "passed": {"type": "boolean"},
                "items": {"type": "array", "items": {
                    "type": "object",
                    "required": ["n", "check", "status", "extrapolation", "detail"],
                    "properties": {
                        "n": {"type": "integer"},
                        "check": {"type": "string"},
                        "status": {"enum": ["PASS", "FAIL"]},
                        "extrapolation": {"type": "boolean"},
                        "detail": {"type": "string"},
                    },
                }},
            },
        },
        "Equation": {
            "type": "object", "required": ["n", "form", "delta"],
            "properties": {"n": {"type": "integer"},
                           "form": {"enum": ["canonical", "general-q"]},
                           "delta": {"$ref": "#/$defs/DiffPoly"}},
        },
        "Lagrangian": {
            "type": "object", "required": ["n", "form", "lagrangian"],
            "properties": {"n": {"type": "integer"},
                           "form": {"enum": ["canonical", "general-q"]},
                           "lagrangian": {"$ref": "#/$defs/DiffPoly"}},
        },
        "SymmetryFrame": {
            "type": "object", "required": ["n", "generators"],
            "properties": {"n": {"type": "integer"},
                           "generators": {"type": "array", "items": {
                               "type": "object", "required": ["name", "field"],
                               "properties": {"name": {"type": "string"},
                                              "field": {"$ref": "#/$defs/VectorField"}}}}},
        },
        "Classification": {
            "type": "object",
            "required": ["n", "field", "point_symmetry", "divergence", "divergence_defect"],
            "properties": {
                "n": {"type": "integer"},
                "field": {"$ref": "#/$defs/VectorField"},
                "point_symmetry": {"type": "boolean"},
                "divergence": {"type": "boolean"},
                "divergence_defect": {"$ref": "#/$defs/DiffPoly"},
                "variational": {"type": ["boolean", "null"]},
                "variational_defect": {"oneOf": [{"$ref": "#/$defs/DiffPoly"}, {"type": "null"}]},
                "lagrangian": {"oneOf": [{"$ref": "#/$defs/DiffPoly"}, {"type": "null"}]},
            },
        },
        "SelftestReport": {
            "type": "object", "required": ["seed", "cases", "passed", "properties"],
            "properties": {
                "seed": {"type": "integer"},
                "cases": {"type": "integer"},
                "passed": {"type": "boolean"},
                "properties": {"type": "array", "items": {
                    "type": "object", "required": ["name", "cases", "failures"],
                    "properties": {"name": {"type": "string"},
                                   "cases": {"type": "integer"},
                                   "failures": {"type": "integer"}}}},
            },
        },
    },
}


# -- scalar pieces ----------------------------------------------------------

def encode_rational(c: Fraction) -> dict:
    c = Fraction(c)
    return {"num": str(c.numerator), "den": str(c.denominator)}


def decode_rational(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def encode_var(v: Var) -> dict:
    if v.kind == INDEP:
        return {"kind": "x"}
    if v.kind == JET_Y:
        return {"kind": "y", "order": v.index}
    if v.kind == JET_Q:
        return {"kind": "q", "order": v.index}
    return {"kind": "param", "tag": v.index}


def decode_var(d: dict) -> Var:
    kind = d["kind"]
    if kind == "x":
        return X
    if kind == "y":
        return yvar(int(d["order"]))
    if kind == "q":
        return qvar(int(d["order"]))
    if kind == "param":
        return pvar(d["tag"])
    raise MalformedDocumentError(f"unknown variable kind {kind!r}")


def encode_poly(p: DiffPoly) -> dict:
    return {
        "text": render_text(p),
        "terms": [{"coeff": encode_rational(c),
                   "monomial": [{"var": encode_var(v), "exp": e} for v, e in mono]}
                  for mono, c in p.sorted_terms()],
    }


def decode_poly(d: dict) -> DiffPoly:
    terms: dict = {}
    for t in d["terms"]:
        mono = tuple(sorted((decode_var(f["var"]), int(f["exp"])) for f in t["monomial"]))
        if len({v for v, _ in mono}) != len(mono) or any(e < 1 for _, e in mono):
            raise MalformedDocumentError("monomial repeats a variable or has a bad exponent")
        if mono in terms:
            raise MalformedDocumentError("duplicate monomial")
        terms[mono] = decode_rational(t["coeff"])
    return DiffPoly(terms)


def encode_field(v: VectorField) -> dict:
    return {"xi": encode_poly(v.xi), "psi": encode_poly(v.psi)}


def decode_field(d: dict) -> VectorField:
    return VectorField(decode_poly(d["xi"]), decode_poly(d["psi"]))


def _encode_combo(b: dict) -> list:
    return [{"generator": name, "coeff": encode_rational(c)} for name, c in b.items()]


def _decode_combo(items: list) -> dict:
    return {i["generator"]: decode_rational(i["coeff"]) for i in items}


def _encode_system(s: ParamSystem) -> dict:
    return {"unknowns": list(s.unknowns),
            "rows": [[{"unknown": u, "coeff": encode_rational(row[u])}
                      for u in s.unknowns if u in row] for row in s.rows]}


def _decode_system(d: dict) -> ParamSystem:
    rows = tuple({i["unknown"]: decode_rational(i["coeff"]) for i in r} for r in d["rows"])
    return ParamSystem(tuple(d["unknowns"]), rows)


# -- documents --------------------------------------------------------------

def to_document(obj: Any) -> dict:
    """Wrap a public value into a schema-tagged JSON-ready dict."""
    if isinstance(obj, DiffPoly):
        kind, data = "DiffPoly", encode_poly(obj)
    elif isinstance(obj, VectorField):
        kind, data = "VectorField", encode_field(obj)
    elif isinstance(obj, SubalgebraReport):
        kind, data = "SubalgebraReport", {
            "kind": obj.kind, "n": obj.n,
            "basis": [_encode_combo(b) for b in obj.basis],
            "defect_before": encode_poly(obj.defect_before),
            "constraints": _encode_system(obj.constraints),
            "extrapolation": obj.extrapolation,
        }
    elif isinstance(obj, FirstIntegral):
        kind, data = "FirstIntegral", {
            "source": obj.source, "n": obj.n,
            "field": encode_field(obj.field), "expr": encode_poly(obj.expr),
        }
    elif isinstance(obj, ConjectureReport):
        kind, data = "ConjectureReport", {
            "n_max": obj.n_max, "passed": obj.passed,
            "items": [{"n": i.n, "check": i.check, "status": i.status,
                       "extrapolation": i.extrapolation, "detail": i.detail}
                      for i in obj.items],
        }
    elif isinstance(obj, MaximalEquation):
        kind, data = "Equation", {"n": obj.n, "form": obj.form.value,
                                  "delta": encode_poly(obj.delta)}
    elif isinstance(obj, SymmetryFrame):
        kind, data = "SymmetryFrame", {
            "n": obj.n,
            "generators": [{"name": name, "field": encode_field(v)} for name, v in obj],
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"schema": SCHEMA, "type": kind, "data": data}


def from_document(doc: dict) -> Any:
    try:
        if doc.get("schema") != SCHEMA:
            raise MalformedDocumentError(f"expected schema {SCHEMA!r}")
        kind, d = doc["type"], doc["data"]
        if kind == "DiffPoly":
            return decode_poly(d)
        if kind == "VectorField":
            return decode_field(d)
        if kind == "SubalgebraReport":
            return SubalgebraReport(d["kind"], int(d["n"]),
                                    tuple(_decode_combo(b) for b in d["basis"]),
                                    decode_poly(d["defect_before"]),
                                    _decode_system(d["constraints"]),
                                    bool(d["extrapolation"]))
        if kind == "FirstIntegral":
            return FirstIntegral(d["source"], decode_field(d["field"]), int(d["n"]),
                                 decode_poly(d["expr"]))
        if kind == "ConjectureReport":
            items = tuple(ConjectureItem(int(i["n"]), i["check"], i["status"] == "PASS",
                                         bool(i["extrapolation"]), i["detail"])
                          for i in d["items"])
            return ConjectureReport(int(d["n_max"]), items)
        if kind == "Equation":
            return MaximalEquation(int(d["n"]), Form(d["form"]), decode_poly(d["delta"]))
        if kind == "SymmetryFrame":
            return SymmetryFrame(int(d["n"]), tuple((g["name"], decode_field(g["field"]))
                                                    for g in d["generators"]))
        raise MalformedDocumentError(f"unknown document type {kind!r}")
    except MalformedDocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError,
            JetcalcError) as exc:
        raise MalformedDocumentError(f"malformed document: {exc}") from exc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def to_json(obj: Any) -> str:
    return dumps(to_document(obj))


def from_json(text: str) -> Any:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocumentError("top-level JSON value must be an object")
    return from_document(doc)


def validate_document(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` violates the schema."""
    import jsonschema
    jsonschema.validate(doc, JSON_SCHEMA)
