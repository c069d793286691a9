import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings

from conftest import polys
from jetcalc.catalog import (Form, closed_form, divergence_algebra, equation, first_integral,
                             frame, lagrangian, variational_algebra, verify_conjecture)
from jetcalc.diffpoly import DiffPoly, jet_limit, param, q, x, y
from jetcalc.errors import JetLimitError, MalformedDocumentError, ParseError, SpecIndexError
from jetcalc.symmetry import VectorField
from jetcalc.textio import parse_expression, parse_vector_spec, render_latex, render_text
from jetcalc.textio.jsonio import (JSON_SCHEMA, SCHEMA, from_document, from_json, to_document,
                                   to_json, validate_document)

GQ = Form.GENERAL_Q


def _fixtures():
    out = [equation(n, GQ).delta for n in (2, 4, 6, 8)]
    out += [lagrangian(n, GQ) for n in (2, 4, 6, 8)]
    out += [closed_form("W2", n) for n in (4, 6, 8)]
    out += [closed_form("Wy", n) for n in (3, 5, 7)]
    out += [closed_form("W1", n) for n in (3, 4)]
    out += [divergence_algebra(n).defect_before for n in (3, 4)]
    out += [variational_algebra(n).defect_before for n in (4, 6, 8)]
    return out


FIXTURES = _fixtures()


def test_parse_examples():
    assert parse_expression("y3 + x^2*y1") == x(2) * y(1) + y(3)
    assert parse_expression("q*y + y2") == q(0) * y(0) + y(2)
    assert parse_expression("-(1/2)*y1^2") == Fraction(-1, 2) * y(1, 2)
    assert parse_expression("y0 - y") == DiffPoly()
    assert parse_expression("gamma*x") == param("gamma") * x()
    assert parse_expression("2 * (x + 1)^2") == 2 * x(2) + 4 * x() + 2


@pytest.mark.parametrize("src, offset", [
    ("y^^2", 2),
    ("y1 +", 4),
    ("(x", 2),
    ("x^0", 2),
    ("x $ y", 2),
    ("x y", 2),
])
def test_parse_errors_report_offset(src, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(src)
    assert info.value.position == offset
    assert f"offset {offset}" in str(info.value)


def test_parse_respects_jet_limit():
    with jet_limit(8):
        with pytest.raises((JetLimitError, ParseError)):
            parse_expression("y9")


def test_render_examples():
    assert render_text(x() * y(3) - y(2)) == "x*y3 - y2"
    assert render_text(DiffPoly()) == "0"
    assert render_text(-Fraction(1, 2) * y(1, 2)) == "-1/2*y1^2"
    assert render_latex(-Fraction(1, 2) * y(1, 2)) == "-\\frac{1}{2} y_{1}^{2}"
    assert render_latex(param("gamma") * q(2)) == "\\mathfrak{q}_{2} \\gamma"


@pytest.mark.parametrize("p", FIXTURES, ids=range(len(FIXTURES)))
def test_round_trip_fixtures(p):
    assert parse_expression(render_text(p)) == p


@settings(max_examples=200)
@given(polys(max_order=4))
def test_round_trip_random(p):
    assert parse_expression(render_text(p)) == p


@given(polys())
def test_render_is_deterministic(p):
    assert render_text(p) == render_text(parse_expression(render_text(p)))
    assert render_latex(p) == render_latex(DiffPoly(dict(reversed(list(p.terms.items())))))


def test_vector_spec_examples():
    assert parse_vector_spec("W", 4) == VectorField(DiffPoly(), y(0))
    assert parse_vector_spec("F + 2*G", 3) == VectorField(1 + 4 * x(), 4 * y(0))
    fr = frame(4)
    v = parse_vector_spec("a2*V2 + gamma*H", 4)
    assert v == fr.V(2) * param("a2") + fr.H * param("gamma")
    assert parse_vector_spec("2*V0 - 3*G + W", 5) == fr.V(0) * 2 + frame(5).G * -3 + fr.W


@pytest.mark.parametrize("src, n, exc", [
    ("V5", 4, SpecIndexError),
    ("K", 4, ParseError),
    ("x*F", 4, ParseError),
    ("V0*V1", 4, ParseError),
    ("2", 4, ParseError),
    ("F +", 4, ParseError),
])
def test_vector_spec_errors(src, n, exc):
    with pytest.raises(exc):
        parse_vector_spec(src, n)


def test_spec_index_error_is_index_error():
    with pytest.raises(IndexError):
        parse_vector_spec("V5", 4)


def _public_values():
    fr = frame(4)
    w2 = fr.F * param("alpha") + fr.G * param("beta") + fr.H * param("gamma")
    return [
        equation(6, GQ).delta,
        DiffPoly(),
        Fraction(7, 3) * param("lambda") * q(3) ** 2,
        fr.H,
        equation(6, GQ),
        equation(5),
        fr,
        divergence_algebra(4),
        variational_algebra(6),
        first_integral(w2, 4, "alpha*F + beta*G + gamma*H"),
        verify_conjecture(4),
    ]


@pytest.mark.parametrize("obj", _public_values(), ids=lambda o: type(o).__name__)
def test_json_round_trip(obj):
    text = to_json(obj)
    back = from_json(text)
    assert back == obj
    assert to_json(back) == text
    validate_document(json.loads(text))


def test_json_rationals_are_strings():
    doc = to_document(Fraction(-3, 4) * y(1))
    coeff = doc["data"]["terms"][0]["coeff"]
    assert coeff == {"num": "-3", "den": "4"}
    assert doc["schema"] == SCHEMA


def test_big_rationals_survive():
    p = Fraction(10 ** 40 + 1, 3 ** 30) * x()
    assert from_json(to_json(p)) == p


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"schema": "other/1", "type": "DiffPoly", "data": {"terms": []}}',
    '{"schema": "jetcalc/1", "type": "Nope", "data": {}}',
    '{"schema": "jetcalc/1", "type": "DiffPoly", "data": {}}',
    '{"schema": "jetcalc/1", "type": "DiffPoly", "data": {"terms": [{"coeff": {"num": "1", "den": "0"}, "monomial": []}]}}',
    '{"schema": "jetcalc/1", "type": "DiffPoly", "data": {"terms": [{"coeff": {"num": "1", "den": "1"}, "monomial": [{"var": {"kind": "z"}, "exp": 1}]}]}}',
    '{"schema": "jetcalc/1", "type": "DiffPoly", "data": {"terms": [{"coeff": {"num": "1", "den": "1"}, "monomial": [{"var": {"kind": "x"}, "exp": 0}]}]}}',
    '{"schema": "jetcalc/1", "type": "VectorField", "data": {"xi": {"terms": []}, "psi": {"terms": [{"coeff": {"num": "1", "den": "1"}, "monomial": [{"var": {"kind": "y", "order": 1}, "exp": 1}]}]}}}',
])
def test_malformed_json(text):
    with pytest.raises(MalformedDocumentError):
        from_json(text)


def test_schema_rejects_bad_documents():
    doc = to_document(x())
    doc["data"]["terms"][0]["coeff"]["num"] = 3
    with pytest.raises(jsonschema.ValidationError):
        validate_document(doc)
    jsonschema.Draft202012Validator.check_schema(JSON_SCHEMA)


def test_from_document_rejects_unknown_object():
    with pytest.raises(TypeError):
        to_document(object())
    with pytest.raises(MalformedDocumentError):
        from_document({"schema": SCHEMA})
