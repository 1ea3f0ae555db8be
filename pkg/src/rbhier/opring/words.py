"""Letters, words and linear combinations of words.

Operators are words in three kinds of letters, read like operator
composition: the rightmost letter acts first.

* ``Coeff(m)``: multiplication by a tensor monomial ``m`` of basis functions,
* ``Subst(M)``: the substitution ``M*``,
* ``Integ(i)``: the axis integral ``int^{x_i}`` (written ``A_i``).

Words are kept in a canonical shape: adjacent coefficient letters multiply
out, adjacent substitutions compose (``M* N* = (N M)*``) and unit letters
disappear.  An :class:`OperatorExpr` is a rational combination of words.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..bialgebra import Basis, Coefficient, _collect
from ..hierarchy import (HierarchyElement, TensorMonomial, mono_place, mono_sort_key,
                         mono_support, mono_times)
from ..matrixsubst import SubstMatrix, compose
from ..rational import ONE, as_rational


@dataclass(frozen=True, slots=True)
class Coeff:
    mono: TensorMonomial

    def sort_key(self):
        return (0, mono_sort_key(self.mono))

    @property
    def support(self) -> frozenset[int]:
        return mono_support(self.mono)


@dataclass(frozen=True, slots=True)
class Subst:
    matrix: SubstMatrix

    def sort_key(self):
        return (1, self.matrix.rows)


@dataclass(frozen=True, slots=True)
class Integ:
    axis: int

    def __post_init__(self):
        if self.axis < 1:
            raise ValueError("integration axes are numbered from 1")

    def sort_key(self):
        return (2, self.axis)


Letter = Coeff | Subst | Integ


def coeff_at(b: Basis, axis: int) -> Coeff:
    return Coeff(mono_place(b, axis))


def _merge(letters: Iterable[Letter]) -> tuple:
    out: list = []
    for letter in letters:
        if isinstance(letter, Coeff):
            if not letter.mono:
                continue
            if out and isinstance(out[-1], Coeff):
                m = mono_times(out.pop().mono, letter.mono)
                if m:
                    out.append(Coeff(m))
                continue
        elif isinstance(letter, Subst):
            if letter.matrix.is_identity():
                continue
            if out and isinstance(out[-1], Subst):
                m = compose(letter.matrix, out.pop().matrix)
                if not m.is_identity():
                    out.append(Subst(m))
                continue
        elif not isinstance(letter, Integ):
            raise TypeError(f"not an operator letter: {letter!r}")
        out.append(letter)
    return tuple(out)


class OperatorWord(tuple):
    """Canonical word of letters (a tuple, so hashing and slicing are cheap)."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()):
        return super().__new__(cls, _merge(letters))

    def concat(self, *others: Iterable[Letter]) -> "OperatorWord":
        letters = list(self)
        for other in others:
            letters.extend(other)
        return OperatorWord(letters)

    def integrator_count(self) -> int:
        return sum(isinstance(a, Integ) for a in self)

    def max_axis(self) -> int:
        """Largest axis any letter refers to."""
        n = 0
        for a in self:
            if isinstance(a, Coeff):
                n = max(n, len(a.mono))
            elif isinstance(a, Subst):
                n = max(n, a.matrix.dim)
            else:
                n = max(n, a.axis)
        return n

    def sort_key(self):
        return (len(self), tuple(a.sort_key() for a in self))

    def __repr__(self):
        from ..syntax import render_word
        return f"OperatorWord({render_word(self)!r})"


EMPTY = OperatorWord()


class OperatorExpr:
    """Rational combination of operator words, immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[OperatorWord, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = _collect((w if isinstance(w, OperatorWord) else OperatorWord(w),
                                as_rational(c)) for w, c in items)

    @classmethod
    def word(cls, *letters: Letter, c=1) -> "OperatorExpr":
        return cls({OperatorWord(letters): as_rational(c)})

    @classmethod
    def scalar(cls, c) -> "OperatorExpr":
        return cls({EMPTY: as_rational(c)})

    @property
    def terms(self) -> dict[OperatorWord, Fraction]:
        return self._terms

    def items(self) -> list[tuple[OperatorWord, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def words(self) -> list[OperatorWord]:
        return [w for w, _ in self.items()]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = OperatorExpr.scalar(other)
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        _collect(other._terms.items(), out)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return OperatorExpr()
            return _raw({w: c * other for w, c in self._terms.items()})
        other = _lift(other)
        if other is None:
            return NotImplemented
        return word_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = _lift(other)
        if other is None:
            return NotImplemented
        return word_multiply(other, self)

    def __repr__(self):
        from ..syntax import render_operator
        return f"OperatorExpr({render_operator(self)!r})"


def _raw(terms: dict) -> OperatorExpr:
    obj = OperatorExpr.__new__(OperatorExpr)
    obj._terms = terms
    return obj


def _lift(value) -> OperatorExpr | None:
    if isinstance(value, OperatorExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return OperatorExpr.scalar(value)
    if isinstance(value, OperatorWord):
        return _raw({value: ONE})
    if isinstance(value, (HierarchyElement, Coefficient)):
        return coeff(value)
    return None


def word_multiply(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Composition ``a b`` (``b`` acts first), distributed over both sums."""
    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            _collect([(w1.concat(w2), c1 * c2)], out)
    return _raw(out)


def coeff(f: HierarchyElement | Coefficient, axis: int = 1) -> OperatorExpr:
    """Multiplication by ``f``; coefficients enter as one word per monomial.

    A univariate :class:`Coefficient` is placed on ``axis``.
    """
    if isinstance(f, Coefficient):
        f = HierarchyElement.from_coefficient(f, axis)
    return _raw(_collect((OperatorWord((Coeff(m),)), c) for m, c in f.terms.items()))


def subst(m: SubstMatrix) -> OperatorExpr:
    return OperatorExpr.word(Subst(m))


def integ(axis: int) -> OperatorExpr:
    return OperatorExpr.word(Integ(axis))


def compose_words(*factors) -> OperatorExpr:
    out = OperatorExpr.scalar(1)
    for f in factors:
        out = out * f
    return out
