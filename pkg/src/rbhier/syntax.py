"""Text and LaTeX syntax for coefficients, functions, matrices and operators.

Text grammar (whitespace is insignificant except as letter separator)::

    function  := ['+'|'-'] term (('+'|'-') term)*
    term      := factor ('*' factor)*
    factor    := NUMBER | VAR ['^' INT] | 'exp' '(' linear ')'
    linear    := sum of [NUMBER '*'] VAR terms
    VAR       := 'x' INT | 'x' | 'y' | 'z'          (x, y, z mean x1, x2, x3)

    operator  := ['+'|'-'] oterm (('+'|'-') oterm)*
    oterm     := ofactor+                           (juxtaposition composes)
    ofactor   := 'A' INT | matrix '*' | product of factors | '(' operator ')'
    matrix    := '[[' rows ']]' | 'T(' i ';' v.. ')' | 'L(' i ';' w.. ')'
               | 'D(' i ';' lam ')' | 'E(' i ')' | 'P(' i j ')' | 'I'

Rendering produces text that parses back to the same object.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .bialgebra import Basis, Coefficient
from .hierarchy import HierarchyElement
from .matrixsubst import (IDENTITY, SubstMatrix, make_eliminant, make_evaluation,
                          make_scaling, make_transposition, make_transvection)
from .opring.words import Coeff, OperatorExpr, OperatorWord, Subst, integ, subst
from .rational import ONE, format_rational


class ParseError(ValueError):
    """Malformed input text."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        self.line = self.column = None
        if pos is not None:
            self.line = text.count("\n", 0, pos) + 1
            self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        where = f" at line {self.line}, column {self.column}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class SemanticError(ParseError):
    """Well-formed text describing something outside the function class."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z]+\d*)|(?P<op>[-+*^()\[\],;]))")
_ALIASES = {"x": 1, "y": 2, "z": 3}


class _Stream:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}",
                                     text, len(text) - len(text[pos:].lstrip()))
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, ahead: int = 0):
        k = self.i + ahead
        return self.tokens[k] if k < len(self.tokens) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, value: str, ahead: int = 0) -> bool:
        kind, text, _ = self.peek(ahead)
        return kind != "end" and text == value

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", self.text, pos)

    def fail(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    def done(self):
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", self.text, pos)


def _variable(name: str) -> int | None:
    if name in _ALIASES:
        return _ALIASES[name]
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        axis = int(m.group(1))
        return axis if axis >= 1 else None
    return None


def _signed_number(s: _Stream) -> Fraction:
    sign = 1
    while s.at("-") or s.at("+"):
        if s.next()[1] == "-":
            sign = -sign
    kind, text, pos = s.next()
    if kind != "num":
        raise ParseError("expected a number", s.text, pos)
    return sign * Fraction(text)


# -- functions ---------------------------------------------------------------

def _is_factor_start(s: _Stream, ahead: int = 0) -> bool:
    kind, text, _ = s.peek(ahead)
    return kind == "num" or (kind == "id" and (text == "exp" or _variable(text) is not None))


def _linear_form(s: _Stream) -> dict[int, Fraction]:
    """``[NUMBER '*'] VAR`` terms joined by signs, as found inside exp()."""
    form: dict[int, Fraction] = {}
    while True:
        sign = 1
        while s.at("-") or s.at("+"):
            if s.next()[1] == "-":
                sign = -sign
        c = Fraction(sign)
        kind, text, pos = s.next()
        if kind == "num":
            c *= Fraction(text)
            if not s.at("*"):
                raise SemanticError("exp() of a constant is not in the function class",
                                    s.text, pos)
            s.next()
            kind, text, pos = s.next()
        axis = _variable(text) if kind == "id" else None
        if axis is None:
            raise ParseError("expected a variable", s.text, pos)
        if s.at("*") or s.at("^"):
            raise SemanticError("exp() argument must be linear, otherwise it does not separate",
                                s.text, s.peek()[2])
        form[axis] = form.get(axis, 0) + c
        if not (s.at("+") or s.at("-")):
            return form


def _factor(s: _Stream) -> tuple[Fraction, dict[int, Basis]]:
    kind, text, pos = s.next()
    if kind == "num":
        return Fraction(text), {}
    if kind == "id" and text == "exp":
        s.expect("(")
        form = _linear_form(s)
        s.expect(")")
        return ONE, {axis: Basis(0, a) for axis, a in form.items() if a}
    axis = _variable(text) if kind == "id" else None
    if axis is None:
        raise ParseError(f"unexpected {text or 'end of input'!r}", s.text, pos)
    k = 1
    if s.at("^"):
        s.next()
        kind, text, pos = s.next()
        if kind != "num" or "/" in text:
            raise SemanticError("exponents must be nonnegative integers", s.text, pos)
        k = int(text)
    return ONE, {axis: Basis(k, Fraction(0))}


def _product(s: _Stream) -> tuple[Fraction, tuple]:
    c = ONE
    factors: dict[int, Basis] = {}
    while True:
        c1, fs = _factor(s)
        c *= c1
        for axis, b in fs.items():
            factors[axis] = factors[axis].times(b) if axis in factors else b
        if s.at("*") and _is_factor_start(s, 1):
            s.next()
            continue
        break
    n = max(factors, default=0)
    mono = tuple(factors.get(a, Basis(0, Fraction(0))) for a in range(1, n + 1))
    return c, mono


def _function(s: _Stream) -> HierarchyElement:
    terms = []
    sign = 1
    while s.at("-") or s.at("+"):
        if s.next()[1] == "-":
            sign = -sign
    while True:
        if not _is_factor_start(s):
            s.fail("expected a term")
        c, mono = _product(s)
        terms.append((mono, sign * c))
        if s.at("+") or s.at("-"):
            sign = 1
            while s.at("-") or s.at("+"):
                if s.next()[1] == "-":
                    sign = -sign
            continue
        return HierarchyElement(terms)


def parse_function(text: str) -> HierarchyElement:
    s = _Stream(text)
    f = _function(s)
    s.done()
    return f


def parse_coefficient(text: str) -> Coefficient:
    """Univariate exponential polynomial in ``x``."""
    f = parse_function(text)
    if any(len(m) > 1 for m in f.terms):
        raise SemanticError("a coefficient may only use the variable x", text)
    return Coefficient((m[0] if m else Basis(0, Fraction(0)), c) for m, c in f.terms.items())


# -- matrices ----------------------------------------------------------------

def _axis(s: _Stream) -> int:
    kind, text, pos = s.next()
    if kind != "num" or "/" in text or int(text) < 1:
        raise ParseError("expected an axis number >= 1", s.text, pos)
    return int(text)


def _number_list(s: _Stream, close: str) -> list[Fraction]:
    out = []
    if s.at(close):
        return out
    while True:
        out.append(_signed_number(s))
        if s.at(","):
            s.next()
            continue
        return out


def _matrix(s: _Stream) -> SubstMatrix:
    kind, text, pos = s.peek()
    if text == "[":
        s.next()
        rows = []
        while True:
            s.expect("[")
            rows.append(_number_list(s, "]"))
            s.expect("]")
            if s.at(","):
                s.next()
                continue
            break
        s.expect("]")
        if any(len(r) != len(rows) for r in rows):
            raise SemanticError("matrix literal must be square", s.text, pos)
        return SubstMatrix.from_rows(rows)
    s.next()
    if text == "I":
        return IDENTITY
    if text not in ("T", "L", "D", "E", "P"):
        raise ParseError(f"unknown matrix {text!r}", s.text, pos)
    s.expect("(")
    i = _axis(s)
    try:
        if text == "E":
            m = make_evaluation(i)
        elif text == "P":
            if s.at(","):
                s.next()
            m = make_transposition(i, _axis(s))
        else:
            s.expect(";")
            values = _number_list(s, ")")
            if text == "T":
                m = make_transvection(i, values)
            elif text == "L":
                m = make_eliminant(i, values)
            else:
                if len(values) != 1:
                    raise SemanticError("D(i; lam) takes one scalar", s.text, pos)
                m = make_scaling(i, values[0])
    except ValueError as err:
        if isinstance(err, ParseError):
            raise
        raise SemanticError(str(err), s.text, pos) from None
    s.expect(")")
    return m


def _matrix_start(s: _Stream) -> bool:
    kind, text, _ = s.peek()
    if text == "[":
        return True
    return kind == "id" and (text == "I" or (text in ("T", "L", "D", "E", "P") and s.at("(", 1)))


def parse_matrix(text: str) -> SubstMatrix:
    s = _Stream(text)
    m = _matrix(s)
    if s.at("*"):
        s.next()
    s.done()
    return m


# -- operators ---------------------------------------------------------------

def _oterm(s: _Stream) -> OperatorExpr:
    out = OperatorExpr.scalar(1)
    seen = False
    while True:
        kind, text, pos = s.peek()
        if kind == "id" and re.fullmatch(r"A\d+", text):
            s.next()
            axis = int(text[1:])
            if axis < 1:
                raise ParseError("integrator axes start at 1", s.text, pos)
            out = out * integ(axis)
        elif _matrix_start(s):
            m = _matrix(s)
            if not s.at("*"):
                s.fail("substitution letters need a trailing '*'")
            s.next()
            out = out * subst(m)
        elif text == "(":
            s.next()
            out = out * _operator(s)
            s.expect(")")
        elif _is_factor_start(s):
            c, mono = _product(s)
            out = out * OperatorExpr({OperatorWord((Coeff(mono),)): c})
        else:
            break
        seen = True
    if not seen:
        s.fail("expected an operator term")
    return out


def _operator(s: _Stream) -> OperatorExpr:
    total = OperatorExpr()
    sign = 1
    while True:
        while s.at("-") or s.at("+"):
            if s.next()[1] == "-":
                sign = -sign
        total = total + _oterm(s) * sign
        if s.at("+") or s.at("-"):
            sign = 1
            continue
        return total


def parse_operator(text: str) -> OperatorExpr:
    s = _Stream(text)
    out = _operator(s)
    s.done()
    return out


# -- text rendering ----------------------------------------------------------

def _alpha_text(a: Fraction, var: str) -> str:
    if a == 1:
        return f"exp({var})"
    if a == -1:
        return f"exp(-{var})"
    return f"exp({format_rational(a)}*{var})"


def _basis_text(b: Basis, var: str) -> list[str]:
    out = []
    if b.k == 1:
        out.append(var)
    elif b.k > 1:
        out.append(f"{var}^{b.k}")
    if b.alpha:
        out.append(_alpha_text(b.alpha, var))
    return out


def render_monomial(mono, names=None) -> str:
    parts = []
    for axis, b in enumerate(mono, 1):
        var = names(axis) if names else f"x{axis}"
        parts.extend(_basis_text(b, var))
    return "*".join(parts)


def _join_terms(terms: list[tuple[Fraction, str]], sep_scalar: str = "*") -> str:
    if not terms:
        return "0"
    out = []
    for n, (c, body) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if not body:
            piece = format_rational(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{format_rational(mag)}{sep_scalar}{body}"
        if n == 0:
            out.append(f"-{piece}" if neg else piece)
        else:
            out.append(f" - {piece}" if neg else f" + {piece}")
    return "".join(out)


def render_function(f: HierarchyElement) -> str:
    return _join_terms([(c, render_monomial(m)) for m, c in f.items()])


def render_coefficient(g: Coefficient) -> str:
    return _join_terms([(c, "*".join(_basis_text(b, "x"))) for b, c in g.items()])


def render_matrix(m: SubstMatrix) -> str:
    if m.is_identity():
        return "I"
    return "[" + ",".join("[" + ",".join(format_rational(a) for a in row) + "]"
                          for row in m.rows) + "]"


def render_letter(a) -> str:
    if isinstance(a, Coeff):
        return render_monomial(a.mono)
    if isinstance(a, Subst):
        return render_matrix(a.matrix) + "*"
    return f"A{a.axis}"


def render_word(w: OperatorWord) -> str:
    return " ".join(render_letter(a) for a in w)


def render_operator(e: OperatorExpr) -> str:
    return _join_terms([(c, render_word(w)) for w, c in e.items()], sep_scalar=" ")


# -- LaTeX -------------------------------------------------------------------

def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _latex_basis(b: Basis, var: str) -> list[str]:
    out = []
    if b.k == 1:
        out.append(var)
    elif b.k > 1:
        out.append(f"{var}^{{{b.k}}}")
    if b.alpha:
        a = b.alpha
        coef = "" if a == 1 else "-" if a == -1 else _latex_rational(a) + " "
        out.append(f"e^{{{coef}{var}}}")
    return out


def latex_monomial(mono) -> str:
    parts = []
    for axis, b in enumerate(mono, 1):
        parts.extend(_latex_basis(b, f"x_{{{axis}}}"))
    return " ".join(parts)


def latex_matrix(m: SubstMatrix) -> str:
    if m.is_identity():
        return "I"
    body = r" \\ ".join(" & ".join(_latex_rational(a) for a in row) for row in m.rows)
    return r"\left[\begin{smallmatrix}" + body + r"\end{smallmatrix}\right]"


def latex_letter(a) -> str:
    if isinstance(a, Coeff):
        return latex_monomial(a.mono)
    if isinstance(a, Subst):
        return latex_matrix(a.matrix) + "^*"
    return f"\\int^{{x_{{{a.axis}}}}}"


def _latex_join(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for n, (c, body) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if not body:
            piece = _latex_rational(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{_latex_rational(mag)} {body}"
        if n == 0:
            out.append(f"-{piece}" if neg else piece)
        else:
            out.append(f" - {piece}" if neg else f" + {piece}")
    return "".join(out)


def latex_function(f: HierarchyElement) -> str:
    return _latex_join([(c, latex_monomial(m)) for m, c in f.items()])


def latex_operator(e: OperatorExpr) -> str:
    return _latex_join([(c, " ".join(latex_letter(a) for a in w)) for w, c in e.items()])

