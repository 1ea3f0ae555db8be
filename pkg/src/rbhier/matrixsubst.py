"""Substitution matrices over the rationals.

A matrix ``M`` acts on functions by linear substitution: ``M* f = f[M]``
replaces ``x_i`` with ``sum_j M[i][j] x_j``, i.e. row ``i`` of ``M`` tells
what becomes of ``x_i``.  The action is contravariant, ``(MN)* = N* M*``.

Matrices live in the direct limit of GL/Mat under ``M -> diag(M, 1)``, so
every instance is stored trimmed: trailing rows/columns that coincide with
the identity are dropped and the identity itself has dimension 0.  Indices
are 1-based throughout, matching the mathematical notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import ONE, ZERO, as_rational

SparseVector = dict  # axis (1-based) -> nonzero Fraction


def _trim(rows: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(rows)
    while n > 0:
        k = n - 1
        if rows[k][k] != ONE:
            break
        if any(rows[k][c] for c in range(n) if c != k):
            break
        if any(rows[r][k] for r in range(n) if r != k):
            break
        n -= 1
    return tuple(tuple(rows[r][:n]) for r in range(n))


@dataclass(frozen=True)
class SubstMatrix:
    """Square rational matrix in trimmed form.

    Build instances with :meth:`from_rows` or the ``make_*`` helpers; the
    constructor trims whatever it is given, so equality is mathematical
    equality in the direct limit.
    """

    rows: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        n = len(self.rows)
        cooked = []
        for row in self.rows:
            if len(row) != n:
                raise ValueError("substitution matrices must be square")
            cooked.append([as_rational(a) for a in row])
        object.__setattr__(self, "rows", _trim(cooked))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "SubstMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_identity(self) -> bool:
        return not self.rows

    def entry(self, r: int, c: int) -> Fraction:
        n = self.dim
        if r <= n and c <= n:
            return self.rows[r - 1][c - 1]
        return ONE if r == c else ZERO

    def row(self, r: int, n: int | None = None) -> tuple[Fraction, ...]:
        n = max(self.dim, r) if n is None else n
        return tuple(self.entry(r, c) for c in range(1, n + 1))

    def row_support(self, r: int) -> dict[int, Fraction]:
        """Row ``r`` as a sparse vector (the linear form replacing x_r)."""
        if r > self.dim:
            return {r: ONE}
        return {c: a for c, a in enumerate(self.rows[r - 1], 1) if a}

    def column(self, c: int, n: int | None = None) -> tuple[Fraction, ...]:
        n = max(self.dim, c) if n is None else n
        return tuple(self.entry(r, c) for r in range(1, n + 1))

    def row_is_zero(self, r: int) -> bool:
        return r <= self.dim and not any(self.rows[r - 1])

    def column_is_zero(self, c: int) -> bool:
        return c <= self.dim and not any(row[c - 1] for row in self.rows)

    def embed(self, n: int) -> list[list[Fraction]]:
        """Dense ``n x n`` copy, padding with the identity."""
        if n < self.dim:
            raise ValueError(f"cannot embed a dimension {self.dim} matrix into {n}")
        return [[self.entry(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)]

    def __matmul__(self, other: "SubstMatrix") -> "SubstMatrix":
        return compose(self, other)

    def eliminant_vector(self, i: int) -> SparseVector | None:
        """If this matrix equals ``L_i(w)`` return ``w`` (rows > i), else None."""
        n = self.dim
        w = {}
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                a = self.rows[r - 1][c - 1]
                if r == c:
                    if a != ONE:
                        return None
                elif c == i and r > i:
                    if a:
                        w[r] = a
                elif a:
                    return None
        return w

    def __repr__(self):
        if not self.rows:
            return "SubstMatrix(I)"
        body = ",".join("[" + ",".join(str(a) for a in row) + "]" for row in self.rows)
        return f"SubstMatrix([{body}])"


IDENTITY = SubstMatrix()


def identity() -> SubstMatrix:
    return IDENTITY


def compose(m: SubstMatrix, n: SubstMatrix) -> SubstMatrix:
    """Plain matrix product ``m @ n``.

    Keep the contravariance in mind: applying ``m*`` then ``n*`` to a
    function is the substitution by ``n @ m``.
    """
    if m.is_identity():
        return n
    if n.is_identity():
        return m
    d = max(m.dim, n.dim)
    a, b = m.embed(d), n.embed(d)
    prod = [[sum((a[r][k] * b[k][c] for k in range(d) if a[r][k]), ZERO)
             for c in range(d)] for r in range(d)]
    return SubstMatrix.from_rows(prod)


def _sparse(values, *, first: int, skip: int | None = None) -> SparseVector:
    """Normalise a mapping or a dense sequence into ``{axis: value}``.

    Dense sequences are laid out from axis ``first`` upward, jumping over
    ``skip`` (used for transvection vectors, which are indexed by every axis
    except the distinguished one).
    """
    if isinstance(values, Mapping):
        items = ((int(k), as_rational(v)) for k, v in values.items())
    else:
        axes = []
        axis = first
        for _ in values:
            if axis == skip:
                axis += 1
            axes.append(axis)
            axis += 1
        items = zip(axes, (as_rational(v) for v in values))
    return {k: v for k, v in items if v}


def make_transvection(i: int, v) -> SubstMatrix:
    """``T_i(v)``: the identity with row ``i`` replaced by ``(v_1,..,1,..,v_n)``.

    ``v`` is a mapping ``{axis: value}`` or a sequence over ``{1..n} \\ {i}``.
    """
    vec = _sparse(v, first=1, skip=i)
    if i in vec:
        raise ValueError("a transvection vector has no component at its own axis")
    n = max([i, *vec])
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    for c, a in vec.items():
        rows[i - 1][c - 1] = a
    return SubstMatrix.from_rows(rows)


def make_eliminant(i: int, w) -> SubstMatrix:
    """``L_i(w)``: the identity plus ``w_r`` at ``(r, i)`` for ``r > i``.

    ``w`` is a mapping ``{row: value}`` or a sequence ``(w_{i+1}, ..., w_n)``.
    """
    vec = _sparse(w, first=i + 1)
    if any(r <= i for r in vec):
        raise ValueError("eliminant entries must sit strictly below the diagonal")
    n = max([i, *vec])
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    for r, a in vec.items():
        rows[r - 1][i - 1] = a
    return SubstMatrix.from_rows(rows)


def eliminant_inverse(i: int, w) -> SubstMatrix:
    """``L_i(w)^{-1} = L_i(-w)``."""
    return make_eliminant(i, {r: -a for r, a in _sparse(w, first=i + 1).items()})


def make_scaling(i: int, lam) -> SubstMatrix:
    """``d_i(lam) = I + (lam - 1) e_ii``."""
    rows = [[ONE if r == c else ZERO for c in range(i)] for r in range(i)]
    rows[i - 1][i - 1] = as_rational(lam)
    return SubstMatrix.from_rows(rows)


def make_evaluation(i: int) -> SubstMatrix:
    """``E_i = I - e_ii``; its action sets ``x_i = 0``."""
    return make_scaling(i, 0)


def make_permutation(perm: Mapping[int, int] | Sequence[int]) -> SubstMatrix:
    """Permutation matrix whose action is ``f(x_1..x_n) -> f(x_p(1)..x_p(n))``.

    ``perm`` is a mapping or the one-line notation ``(p(1), .., p(n))``.
    """
    if isinstance(perm, Mapping):
        table = {int(k): int(v) for k, v in perm.items()}
    else:
        table = {k: int(v) for k, v in enumerate(perm, 1)}
    if sorted(table) != sorted(table.values()):
        raise ValueError(f"not a permutation: {table}")
    n = max(table, default=0)
    rows = [[ZERO] * n for _ in range(n)]
    for r in range(1, n + 1):
        rows[r - 1][table.get(r, r) - 1] = ONE
    return SubstMatrix.from_rows(rows)


def make_transposition(i: int, j: int) -> SubstMatrix:
    return make_permutation({i: j, j: i})


def row_vector_matrix(v: Mapping[int, Fraction]) -> SubstMatrix:
    """``v (+) e_2 (+) ... ``: replaces x_1 by the form ``v``, fixes the rest."""
    vec = _sparse(v, first=1)
    n = max([1, *vec])
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    rows[0] = [vec.get(c, ZERO) for c in range(1, n + 1)]
    return SubstMatrix.from_rows(rows)


def cutoff(m: SubstMatrix, n: int) -> SubstMatrix:
    """Keep the first ``n`` rows of ``m``; later rows become unit rows."""
    d = m.dim
    if n >= d:
        return m
    rows = m.embed(d)
    for r in range(n, d):
        rows[r] = [ONE if c == r else ZERO for c in range(d)]
    return SubstMatrix.from_rows(rows)


@dataclass(frozen=True)
class Pivot:
    """Result of :func:`pivot_decompose`.

    ``index`` is the first row with a nonzero entry in the chosen column (None
    when the column vanishes), ``tail`` the quotients below it and
    ``reduced`` the matrix ``L_index(-tail) @ M`` whose column is a multiple
    of ``e_index``.  ``M == make_eliminant(index, tail) @ reduced``.
    """

    index: int | None
    tail: SparseVector
    reduced: SubstMatrix

    @property
    def eliminant(self) -> SubstMatrix:
        return make_eliminant(self.index, self.tail) if self.index else IDENTITY


def pivot_decompose(m: SubstMatrix, j: int) -> Pivot:
    column = m.column(j)
    index = next((r for r, a in enumerate(column, 1) if a), None)
    if index is None:
        return Pivot(None, {}, m)
    lead = column[index - 1]
    tail = {r: a / lead for r, a in enumerate(column, 1) if r > index and a}
    reduced = compose(make_eliminant(index, {r: -a for r, a in tail.items()}), m)
    return Pivot(index, tail, reduced)


def eliminant_commute(j: int, u: Mapping[int, Fraction], i: int,
                      w: Mapping[int, Fraction]) -> SparseVector:
    """For ``i < j`` return ``w'`` with ``L_j(u) L_i(w) = L_i(w') L_j(u)``."""
    if not i < j:
        raise ValueError("eliminant_commute needs i < j")
    wj = w.get(j, ZERO)
    out = dict(w)
    if wj:
        for r, a in u.items():
            out[r] = out.get(r, ZERO) + a * wj
    return {r: a for r, a in out.items() if a}


def sparse_add(a: Mapping[int, Fraction], b: Mapping[int, Fraction],
               scale=ONE) -> SparseVector:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, ZERO) + scale * v
    return {k: v for k, v in out.items() if v}
