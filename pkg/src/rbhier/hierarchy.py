"""Separated multivariate exponential polynomials and the operators on them.

An element of the hierarchy is a rational combination of *tensor
monomials* ``b_1(x_1) b_2(x_2) ... b_n(x_n)`` with every ``b_i`` a
:class:`~rbhier.bialgebra.Basis` function.  A tensor monomial is stored as a
tuple of basis functions with trailing units stripped, so the same function
has the same key whatever the ambient number of variables.

Three families of operators act on the hierarchy:

* linear substitutions ``M* f = f[M]`` (see :mod:`rbhier.matrixsubst`),
* the axis integrals ``int^{x_i}`` (integrate over ``x_i`` from 0),
* multiplication by coefficient functions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .bialgebra import UNIT, Basis, Coefficient, _collect, integrate_basis
from .matrixsubst import SubstMatrix, row_vector_matrix
from .rational import ONE, ZERO, as_rational

TensorMonomial = tuple  # tuple[Basis, ...], trailing units removed


# -- tensor monomials --------------------------------------------------------

def mono_trim(factors: Sequence[Basis]) -> TensorMonomial:
    n = len(factors)
    while n and factors[n - 1].is_unit:
        n -= 1
    return tuple(factors[:n])


def mono_factor(m: TensorMonomial, axis: int) -> Basis:
    return m[axis - 1] if axis <= len(m) else UNIT


def mono_place(b: Basis, axis: int) -> TensorMonomial:
    if b.is_unit:
        return ()
    return (UNIT,) * (axis - 1) + (b,)


def mono_times(m1: TensorMonomial, m2: TensorMonomial) -> TensorMonomial:
    if len(m1) < len(m2):
        m1, m2 = m2, m1
    out = list(m1)
    for s, b in enumerate(m2):
        if not b.is_unit:
            out[s] = out[s].times(b)
    return mono_trim(out)


def mono_support(m: TensorMonomial) -> frozenset[int]:
    return frozenset(s for s, b in enumerate(m, 1) if not b.is_unit)


def mono_split(m: TensorMonomial, axes) -> tuple[TensorMonomial, TensorMonomial]:
    """Split into the factors sitting on ``axes`` and the remaining ones."""
    axes = set(axes)
    inside = [b if s in axes else UNIT for s, b in enumerate(m, 1)]
    outside = [UNIT if s in axes else b for s, b in enumerate(m, 1)]
    return mono_trim(inside), mono_trim(outside)


def mono_sort_key(m: TensorMonomial):
    return tuple(b.sort_key() for b in m)


# -- elements ----------------------------------------------------------------

class HierarchyElement:
    """Immutable rational combination of tensor monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[TensorMonomial, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = _collect((mono_trim(tuple(Basis(int(b[0]), as_rational(b[1])) for b in m)),
                                as_rational(c)) for m, c in items)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "HierarchyElement":
        # terms already collected and trimmed
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "HierarchyElement":
        return cls({(): as_rational(c)})

    @classmethod
    def monomial(cls, m: TensorMonomial, c=1) -> "HierarchyElement":
        return cls({m: as_rational(c)})

    @classmethod
    def from_coefficient(cls, g: Coefficient, axis: int = 1) -> "HierarchyElement":
        return cls._raw(_collect((mono_place(b, axis), c) for b, c in g.terms.items()))

    @classmethod
    def variable(cls, axis: int) -> "HierarchyElement":
        return cls.from_coefficient(Coefficient.monomial(1, 0), axis)

    @property
    def terms(self) -> dict[TensorMonomial, Fraction]:
        return self._terms

    def items(self) -> list[tuple[TensorMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: mono_sort_key(t[0]))

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HierarchyElement.constant(other)
        if not isinstance(other, HierarchyElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        _collect(other._terms.items(), out)
        return HierarchyElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return HierarchyElement._raw({m: -c for m, c in self._terms.items()})

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
                return HierarchyElement()
            return HierarchyElement._raw({m: c * other for m, c in self._terms.items()})
        other = _lift(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                _collect([(mono_times(m1, m2), c1 * c2)], out)
        return HierarchyElement._raw(out)

    __rmul__ = __mul__

    def max_axis(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def __repr__(self):
        from .syntax import render_function
        return f"HierarchyElement({render_function(self)!r})"


def _lift(value) -> HierarchyElement | None:
    if isinstance(value, HierarchyElement):
        return value
    if isinstance(value, (int, Fraction)):
        return HierarchyElement.constant(value)
    if isinstance(value, Coefficient):
        return HierarchyElement.from_coefficient(value)
    return None


def support(f: HierarchyElement) -> frozenset[int]:
    """Axes on which ``f`` genuinely depends."""
    out: set[int] = set()
    for m in f.terms:
        out |= mono_support(m)
    return frozenset(out)


variable_support = support


# -- substitution ------------------------------------------------------------

def _compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=65536)
def expand_linear(b: Basis, form: tuple[tuple[int, Fraction], ...]) -> tuple:
    """``b(sum_m a_m x_m)`` over tensor monomials; ``form`` lists ``(m, a_m)``.

    Multinomial expansion of the polynomial part, and the exponential splits
    into one factor per variable.
    """
    k, alpha = b
    if not form:
        return (((), ONE),) if k == 0 else ()
    n = max(m for m, _ in form)
    out: dict = {}
    kf = factorial(k)
    for ls in _compositions(k, len(form)):
        c = Fraction(kf)
        factors = [UNIT] * n
        for (m, a), l in zip(form, ls):
            c = c / factorial(l) * a ** l
            factors[m - 1] = Basis(l, alpha * a)
        _collect([(mono_trim(factors), c)], out)
    return tuple(out.items())


def substitute_monomial(m: SubstMatrix, mono: TensorMonomial) -> dict:
    out: dict = {(): ONE}
    for s, b in enumerate(mono, 1):
        if b.is_unit:
            continue
        form = m.row_support(s)
        if len(form) == 1 and form.get(s) == ONE:
            image = ((mono_place(b, s), ONE),)
        else:
            image = expand_linear(b, tuple(sorted(form.items())))
        if not image:
            return {}
        nxt: dict = {}
        for m1, c1 in out.items():
            for m2, c2 in image:
                _collect([(mono_times(m1, m2), c1 * c2)], nxt)
        out = nxt
    return out


def substitute(m: SubstMatrix, f: HierarchyElement) -> HierarchyElement:
    """``m* f = f[m]``: replace ``x_i`` by ``sum_j m[i][j] x_j``."""
    if m.is_identity():
        return f
    out: dict = {}
    for mono, c in f.terms.items():
        _collect(((m2, c * c2) for m2, c2 in substitute_monomial(m, mono).items()), out)
    return HierarchyElement._raw(out)


def substitute_form(g: Basis | Coefficient, form: Mapping[int, Fraction]) -> HierarchyElement:
    """Univariate ``g`` evaluated at the linear form ``sum_m form[m] x_m``."""
    form_t = tuple(sorted((m, as_rational(a)) for m, a in form.items() if a))
    terms = g.terms.items() if isinstance(g, Coefficient) else [(g, ONE)]
    out: dict = {}
    for b, c in terms:
        _collect(((m2, c * c2) for m2, c2 in expand_linear(b, form_t)), out)
    return HierarchyElement._raw(out)


# -- integrals and evaluations -----------------------------------------------

def _replace_factor(mono: TensorMonomial, axis: int, b: Basis) -> TensorMonomial:
    factors = list(mono) + [UNIT] * (axis - len(mono))
    factors[axis - 1] = b
    return mono_trim(factors)


def integrate_axis(axis: int, f: HierarchyElement) -> HierarchyElement:
    """``int_0^{x_axis}`` taken in the variable ``x_axis``."""
    out: dict = {}
    for mono, c in f.terms.items():
        b = mono_factor(mono, axis)
        _collect(((_replace_factor(mono, axis, b2), c * c2)
                  for b2, c2 in integrate_basis(b)), out)
    return HierarchyElement._raw(out)


def evaluate_axis(axis: int, f: HierarchyElement) -> HierarchyElement:
    """Set ``x_axis = 0``; the same as the action of ``E_axis``."""
    out: dict = {}
    for mono, c in f.terms.items():
        if mono_factor(mono, axis).k == 0:
            _collect([(_replace_factor(mono, axis, UNIT), c)], out)
    return HierarchyElement._raw(out)


def multiply(f: HierarchyElement, g: HierarchyElement) -> HierarchyElement:
    return f * g


# -- component expansions ----------------------------------------------------

def component_expansion(f: HierarchyElement, axes) -> list[tuple[Fraction, TensorMonomial, TensorMonomial]]:
    """Write ``f = sum_mu c_mu f'_mu f''_mu`` with ``f'`` on ``axes``.

    Returns ``(c_mu, part_on_axes, part_elsewhere)`` triples; multiplying
    them back together reproduces ``f`` exactly.
    """
    out = []
    for mono, c in f.items():
        inside, outside = mono_split(mono, axes)
        out.append((c, inside, outside))
    return out


def recombine(expansion) -> HierarchyElement:
    return HierarchyElement._raw(_collect((mono_times(a, b), c) for c, a, b in expansion))


# -- convolution -------------------------------------------------------------

def duhamel_convolve(f: Coefficient, g: Coefficient) -> Coefficient:
    """``(f * g)(x) = int_0^x f(x - y) g(y) dy`` built from hierarchy operators.

    Substitute ``x - y`` into ``f`` and ``y`` into ``g``, integrate over
    ``y`` and finally identify ``y`` with ``x``.
    """
    fx = HierarchyElement.from_coefficient(f, 1)
    gx = HierarchyElement.from_coefficient(g, 1)
    shifted = substitute(row_vector_matrix({1: 1, 2: -1}), fx)
    moved = substitute(row_vector_matrix({2: 1}), gx)
    inner = integrate_axis(2, shifted * moved)
    diag = SubstMatrix.from_rows([[1, 0], [1, 0]])
    result = substitute(diag, inner)
    return Coefficient((m[0] if m else UNIT, c) for m, c in result.terms.items())

