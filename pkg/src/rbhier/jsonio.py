"""JSON encodings (schemas live in the repository's ``schemas/`` directory).

Rationals are encoded as strings ``"p/q"`` (or ``"p"`` for integers) so no
precision is lost.  Top-level documents carry a ``"schema"`` tag naming the
schema file and its version.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .bialgebra import Basis, Coefficient
from .hierarchy import HierarchyElement, mono_trim
from .matrixsubst import SubstMatrix
from .opring.normal import volume_integrator
from .opring.words import Coeff, Integ, OperatorExpr, OperatorWord, Subst
from .rational import as_rational, format_rational

SCHEMA_VERSION = "v1"


def schema_tag(name: str) -> str:
    return f"rbhier/{name}/{SCHEMA_VERSION}"


def _q(x: Fraction) -> str:
    return format_rational(x)


def _unq(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"expected a rational string, got {text!r}")
    return as_rational(text)


def basis_to_json(b: Basis) -> dict:
    return {"k": b.k, "alpha": _q(b.alpha)}


def basis_from_json(d: dict) -> Basis:
    k = d["k"]
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    return Basis(k, _unq(d["alpha"]))


def matrix_to_json(m: SubstMatrix) -> dict:
    return {"dim": m.dim, "rows": [[_q(a) for a in row] for row in m.rows]}


def matrix_from_json(d: dict) -> SubstMatrix:
    rows = [[_unq(a) for a in row] for row in d["rows"]]
    if len(rows) != d.get("dim", len(rows)):
        raise ValueError("dim does not match the number of rows")
    return SubstMatrix.from_rows(rows)


def coefficient_to_json(g: Coefficient) -> list:
    return [{"k": b.k, "alpha": _q(b.alpha), "coef": _q(c)} for b, c in g.items()]


def coefficient_from_json(data: list) -> Coefficient:
    return Coefficient((basis_from_json(t), _unq(t["coef"])) for t in data)


def monomial_to_json(mono) -> list:
    return [basis_to_json(b) for b in mono]


def monomial_from_json(data: list) -> tuple:
    return mono_trim(tuple(basis_from_json(b) for b in data))


def function_to_json(f: HierarchyElement) -> list:
    return [{"factors": monomial_to_json(m), "coef": _q(c)} for m, c in f.items()]


def function_from_json(data: list) -> HierarchyElement:
    return HierarchyElement((monomial_from_json(t["factors"]), _unq(t["coef"])) for t in data)


def letter_to_json(a) -> dict:
    if isinstance(a, Coeff):
        return {"type": "coeff", "factors": monomial_to_json(a.mono)}
    if isinstance(a, Subst):
        return {"type": "subst", "matrix": matrix_to_json(a.matrix)}
    return {"type": "integ", "axis": a.axis}


def letter_from_json(d: dict):
    kind = d.get("type")
    if kind == "coeff":
        return Coeff(monomial_from_json(d["factors"]))
    if kind == "subst":
        return Subst(matrix_from_json(d["matrix"]))
    if kind == "integ":
        return Integ(int(d["axis"]))
    raise ValueError(f"unknown letter type {kind!r}")


def word_to_json(w: OperatorWord) -> list:
    return [letter_to_json(a) for a in w]


def operator_to_json(e: OperatorExpr) -> dict:
    return {"schema": schema_tag("operator"),
            "terms": [{"coef": _q(c), "word": word_to_json(w)} for w, c in e.items()]}


def operator_from_json(d: dict) -> OperatorExpr:
    return OperatorExpr((OperatorWord(letter_from_json(a) for a in t["word"]), _unq(t["coef"]))
                        for t in d["terms"])


def normal_form_to_json(e: OperatorExpr) -> dict:
    """Operator JSON plus the parsed volume-integrator shape of every term."""
    terms = []
    for w, c in e.items():
        entry = {"coef": _q(c), "word": word_to_json(w)}
        vol = volume_integrator(w)
        if vol is not None:
            entry["volume"] = {
                "coeff": monomial_to_json(vol.coeff),
                "matrix": matrix_to_json(vol.matrix),
                "lines": [{"axis": j.axis, "coeff": basis_to_json(j.coeff),
                           "shift": {str(r): _q(x) for r, x in j.shift}} for j in vol.lines],
            }
        terms.append(entry)
    return {"schema": schema_tag("normal-form"), "terms": terms}


def dumps(doc) -> str:
    """Deterministic serialisation (sorted keys, fixed separators)."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": "))


def loads_operator(text: str) -> OperatorExpr:
    return operator_from_json(json.loads(text))
