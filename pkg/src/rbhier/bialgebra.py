"""The coefficient algebra of exponential polynomials ``Q[x, e^{Qx}]``.

Its basis is ``x^k e^{alpha x}`` (``k >= 0``, ``alpha`` rational), written
here as :class:`Basis` ``(k, alpha)``.  On top of the commutative algebra
structure there is:

* the binomial coproduct coming from ``f(x + y)``,
* the counit ``f -> f(0)``,
* argument scalings ``lam* f = f(lam x)``, which form a semiring under
  composition and convolution,
* the integral ``P f = int_0^x f``, a Rota-Baxter operator of weight 0.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .rational import ONE, ZERO, as_rational


class Basis(NamedTuple):
    """``x^k e^{alpha x}``."""

    k: int
    alpha: Fraction

    @property
    def is_unit(self) -> bool:
        return self.k == 0 and self.alpha == 0

    def times(self, other: "Basis") -> "Basis":
        return Basis(self.k + other.k, self.alpha + other.alpha)

    def sort_key(self):
        return (self.alpha, self.k)


UNIT = Basis(0, ZERO)


def basis(k: int = 0, alpha=0) -> Basis:
    if k < 0:
        raise ValueError("monomial degree must be nonnegative")
    return Basis(int(k), as_rational(alpha))


def _collect(items: Iterable[tuple], out: dict | None = None) -> dict:
    out = {} if out is None else out
    for key, c in items:
        if c:
            total = out.get(key, ZERO) + c
            if total:
                out[key] = total
            else:
                out.pop(key, None)
    return out


class Coefficient:
    """Finite rational combination of basis functions, immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Basis, Fraction] | Iterable[tuple[Basis, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = _collect((Basis(int(b[0]), as_rational(b[1])), as_rational(c))
                               for b, c in items)
        self._hash = None

    @classmethod
    def constant(cls, c) -> "Coefficient":
        return cls({UNIT: as_rational(c)})

    @classmethod
    def monomial(cls, k: int = 0, alpha=0, c=1) -> "Coefficient":
        return cls({basis(k, alpha): as_rational(c)})

    @property
    def terms(self) -> dict[Basis, Fraction]:
        return self._terms

    def items(self):
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Basis, Fraction]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.constant(other)
        if not isinstance(other, Coefficient):
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
        return Coefficient(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Coefficient({b: c * other for b, c in self._terms.items()})
        other = _lift(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        from .syntax import render_coefficient
        return f"Coefficient({render_coefficient(self)!r})"


def _lift(value) -> Coefficient | None:
    if isinstance(value, Coefficient):
        return value
    if isinstance(value, (int, Fraction)):
        return Coefficient.constant(value)
    return None


X = Coefficient.monomial(1, 0)


def multiply(f: Coefficient, g: Coefficient) -> Coefficient:
    out: dict = {}
    for b1, c1 in f.terms.items():
        for b2, c2 in g.terms.items():
            _collect([(b1.times(b2), c1 * c2)], out)
    return Coefficient(out)


def linear_map(fn: Callable[[Basis], Iterable[tuple[Basis, Fraction]]]):
    """Extend a map defined on basis functions linearly to coefficients."""
    def apply(f: Coefficient) -> Coefficient:
        out: dict = {}
        for b, c in f.terms.items():
            _collect(((b2, c * c2) for b2, c2 in fn(b)), out)
        return Coefficient(out)
    apply.__name__ = getattr(fn, "__name__", "linear_map")
    return apply


def scale_basis(lam: Fraction, b: Basis) -> list[tuple[Basis, Fraction]]:
    return [(Basis(b.k, lam * b.alpha), lam ** b.k)]


def scale_arg(lam, f: Coefficient) -> Coefficient:
    """``lam* f = f(lam x)``; ``scale_arg(0, f)`` is ``f(0)`` as a constant."""
    lam = as_rational(lam)
    return linear_map(lambda b: scale_basis(lam, b))(f)


def antipode(f: Coefficient) -> Coefficient:
    return scale_arg(-1, f)


def counit(f: Coefficient) -> Fraction:
    """Evaluation at zero."""
    return sum((c for b, c in f.terms.items() if b.k == 0), ZERO)


def evaluation(f: Coefficient) -> Coefficient:
    """``ev = 1 . counit`` as an operator on the algebra."""
    return Coefficient.constant(counit(f))


def derivative_basis(b: Basis) -> list[tuple[Basis, Fraction]]:
    out = []
    if b.k:
        out.append((Basis(b.k - 1, b.alpha), Fraction(b.k)))
    if b.alpha:
        out.append((b, b.alpha))
    return out


@lru_cache(maxsize=4096)
def integrate_basis(b: Basis) -> tuple[tuple[Basis, Fraction], ...]:
    """``int_0^x t^k e^{alpha t} dt`` expanded over the basis."""
    k, a = b
    if a == 0:
        return ((Basis(k + 1, ZERO), Fraction(1, k + 1)),)
    # repeated integration by parts, plus the constant fixing the lower limit
    out = [(UNIT, Fraction((-1) ** (k + 1) * factorial(k)) / a ** (k + 1))]
    for i in range(k + 1):
        out.append((Basis(k - i, a), Fraction((-1) ** i * perm(k, i)) / a ** (i + 1)))
    return tuple(out)


derivative = linear_map(derivative_basis)
integrate = linear_map(integrate_basis)


class Tensor:
    """Element of a tensor power of the coefficient algebra.

    Keys are tuples of :class:`Basis` of a fixed length (the rank).
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[tuple, Fraction] | Iterable = ()):
        self.rank = rank
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms = _collect(items)
        if any(len(key) != rank for key in self.terms):
            raise ValueError("tensor key of the wrong rank")

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "Tensor":
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.terms = terms
        return obj

    @classmethod
    def from_coefficient(cls, f: Coefficient) -> "Tensor":
        return cls(1, {(b,): c for b, c in f.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        _collect(other.terms.items(), out)
        return Tensor._raw(self.rank, out)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scaled(-1)

    def scaled(self, c) -> "Tensor":
        c = as_rational(c)
        return Tensor(self.rank, {k: v * c for k, v in self.terms.items()})

    def map_slot(self, slot: int, fn: Callable[[Basis], "Tensor"]) -> "Tensor":
        """Apply a linear map ``A -> A^{(r)}`` in tensor slot ``slot`` (0-based)."""
        out: dict = {}
        for key, c in self.terms.items():
            image = fn(key[slot])
            _collect(((key[:slot] + k2 + key[slot + 1:], c * c2)
                      for k2, c2 in image.terms.items()), out)
        return Tensor._raw(self.rank - 1 + fn(UNIT).rank, out)

    def contract(self) -> Coefficient:
        """Multiply all tensor factors together."""
        out: dict = {}
        for key, c in self.terms.items():
            b = UNIT
            for factor in key:
                b = b.times(factor)
            _collect([(b, c)], out)
        return Coefficient(out)

    def __repr__(self):
        return f"Tensor(rank={self.rank}, terms={len(self.terms)})"


def as_map(op: Callable[[Coefficient], Coefficient]) -> Callable[[Basis], Tensor]:
    """Wrap an algebra endomorphism for use with :meth:`Tensor.map_slot`."""
    return lambda b: Tensor.from_coefficient(op(Coefficient({b: ONE})))


def coproduct_basis(b: Basis) -> Tensor:
    k, a = b
    return Tensor(2, {(Basis(m, a), Basis(k - m, a)): Fraction(comb(k, m)) for m in range(k + 1)})


def coproduct(f: Coefficient) -> Tensor:
    out = Tensor(2)
    for b, c in f.terms.items():
        out = out + coproduct_basis(b).scaled(c)
    return out


def iterated_coproduct(n: int, f: Coefficient) -> Tensor:
    """``Delta^{(n)}``: ``f(x_1 + ... + x_n)`` as a rank ``n`` tensor."""
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    t = Tensor.from_coefficient(f)
    for slot in range(n - 1):
        t = t.map_slot(slot, coproduct_basis)
    return t


def counit_tensor(b: Basis) -> Tensor:
    return Tensor(0, {(): ONE} if b.k == 0 else {})


def convolve_scalings(lam, mu, f: Coefficient) -> Coefficient:
    """``(lam* conv mu*) f = mult (lam* x mu*) Delta f``."""
    lam, mu = as_rational(lam), as_rational(mu)
    t = coproduct(f)
    t = t.map_slot(0, as_map(lambda g: scale_arg(lam, g)))
    t = t.map_slot(1, as_map(lambda g: scale_arg(mu, g)))
    return t.contract()


def rota_baxter_holds(u: Coefficient, v: Coefficient) -> bool:
    """Weight-zero Rota-Baxter identity ``P(u)P(v) = P(u P(v)) + P(P(u) v)``."""
    P = integrate
    return P(u) * P(v) == P(u * P(v)) + P(P(u) * v)
