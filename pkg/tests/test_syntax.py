import json
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings

from rbhier import jsonio
from rbhier.bialgebra import Coefficient
from rbhier.matrixsubst import SubstMatrix, make_eliminant, make_transposition
from rbhier.opring import Integ, OperatorWord, normalize
from rbhier.syntax import (ParseError, SemanticError, latex_operator, parse_coefficient,
                           parse_function, parse_matrix, parse_operator, render_coefficient,
                           render_function, render_matrix, render_operator)
from strategies import coefficients, functions, matrices, words

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.v1.json").read_text())


def test_parse_examples():
    (w,) = parse_operator("A1").words()
    assert w == OperatorWord([Integ(1)])
    (w,) = parse_operator("A1 x1 [[1,1],[0,1]]* A2").words()
    assert len(w) == 4


def test_aliases_and_named_matrices():
    assert parse_function("x*y^2*z") == parse_function("x1*x2^2*x3")
    assert parse_matrix("L(1; 2, 3)") == make_eliminant(1, [2, 3])
    assert parse_matrix("P(1 2)") == make_transposition(1, 2)
    assert parse_matrix("T(2; 5, 7)") == SubstMatrix.from_rows([[1, 0, 0], [5, 1, 7], [0, 0, 1]])
    assert parse_matrix("D(1; 1/2)") == SubstMatrix.from_rows([[Fraction(1, 2)]])
    assert parse_matrix("I").is_identity()


def test_coefficient_grammar():
    g = parse_coefficient("3/2*x^2*exp(-1/3*x) + x - 5")
    assert g == Coefficient.monomial(2, "-1/3", "3/2") + Coefficient.monomial(1) - 5
    with pytest.raises(ParseError):
        parse_coefficient("x1*x2")


def test_rejections():
    with pytest.raises(SemanticError):
        parse_function("exp(x1*x2)")
    with pytest.raises(SemanticError):
        parse_function("exp(x1^2)")
    with pytest.raises(ParseError) as err:
        parse_operator("A1 [[1,2],[3]]*")
    assert err.value.column is not None
    with pytest.raises(ParseError):
        parse_operator("A0")
    with pytest.raises(ParseError) as err:
        parse_operator("A1\n  ]")
    assert (err.value.line, err.value.column) == (2, 3)


def test_render_examples():
    assert render_operator(parse_operator("A1")) == "A1"
    assert latex_operator(normalize(parse_operator("A1 A1"))) == \
        r"x_{1} \int^{x_{1}} - \int^{x_{1}} x_{1}"
    assert render_function(parse_function("2*x1^2*exp(-x2) - 1/2")) == "-1/2 + 2*x1^2*exp(-x2)"
    assert render_operator(parse_operator("A2 x1 [[0,1],[1,1]]* A1 + 3 x2 - 1/2")) == \
        "-1/2 + 3 x2 + A2 x1 [[0,1],[1,1]]* A1"


@given(functions(4))
def test_function_round_trip(f):
    assert parse_function(render_function(f)) == f
    assert jsonio.function_from_json(jsonio.function_to_json(f)) == f


@given(coefficients())
def test_coefficient_round_trip(g):
    assert parse_coefficient(render_coefficient(g)) == g
    data = jsonio.coefficient_to_json(g)
    jsonschema.validate(data, schema("coefficient"))
    assert jsonio.coefficient_from_json(data) == g


@given(matrices(4))
def test_matrix_round_trip(m):
    assert parse_matrix(render_matrix(m)) == m
    data = jsonio.matrix_to_json(m)
    jsonschema.validate(data, schema("matrix"))
    assert jsonio.matrix_from_json(data) == m


@settings(deadline=None)
@given(words(4, 6))
def test_operator_round_trip(e):
    assert parse_operator(render_operator(e)) == e
    doc = jsonio.operator_to_json(e)
    jsonschema.validate(doc, schema("operator"))
    assert jsonio.loads_operator(jsonio.dumps(doc)) == e


@settings(max_examples=40, deadline=None)
@given(words(3, 5))
def test_normal_form_json(e):
    nf = normalize(e)
    doc = jsonio.normal_form_to_json(nf)
    jsonschema.validate(doc, schema("normal-form"))
    assert all("volume" in t for t in doc["terms"])
    assert jsonio.operator_from_json(doc) == nf
    assert parse_operator(render_operator(nf)) == nf


def test_json_rejects_floats_and_bad_letters():
    with pytest.raises((ValueError, TypeError)):
        jsonio.matrix_from_json({"dim": 1, "rows": [[0.5]]})
    with pytest.raises(ValueError):
        jsonio.letter_from_json({"type": "derivative"})


def test_serialisation_is_deterministic():
    e = parse_operator("A2 x1 [[0,1],[1,1]]* A1 + 3 x2")
    assert jsonio.dumps(jsonio.operator_to_json(e)) == jsonio.dumps(jsonio.operator_to_json(e))
