"""Seeded random generation of test functions, matrices and words."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from ..bialgebra import UNIT, Basis
from ..hierarchy import HierarchyElement, mono_trim
from ..matrixsubst import (SubstMatrix, compose, make_eliminant, make_evaluation,
                           make_permutation, make_scaling, make_transvection)
from ..opring.normal import DEFAULT_BUDGET
from ..opring.words import Coeff, Integ, OperatorExpr, Subst
from ..rational import format_rational

DEFAULT_ALPHAS = tuple(Fraction(a) for a in ("0", "1", "-1", "1/2", "-1/2", "2", "-2"))
SMALL = tuple(Fraction(a) for a in ("1", "-1", "2", "-2", "1/2", "-1/2", "3"))


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 100
    max_vars: int = 4
    max_degree: int = 3
    alpha_pool: tuple = DEFAULT_ALPHAS
    max_word_len: int = 6
    functions: int = 3
    budget: int = DEFAULT_BUDGET
    strategies: tuple = ("leftmost", "rightmost", "random")

    def rng(self, *tags) -> random.Random:
        """Independent stream per (seed, tags), so trials can run in any order."""
        return random.Random("/".join(map(str, (self.seed, *tags))))

    def to_json(self) -> dict:
        d = asdict(self)
        d["alpha_pool"] = [format_rational(a) for a in self.alpha_pool]
        d["strategies"] = list(self.strategies)
        return d


class Sampler:
    def __init__(self, cfg: TrialConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng

    # scalars and basis functions
    def scalar(self) -> Fraction:
        return self.rng.choice(SMALL)

    def entry(self) -> Fraction:
        r = self.rng.random()
        return Fraction(0) if r < 0.4 else self.scalar()

    def basis(self, max_k: int | None = None) -> Basis:
        top = self.cfg.max_degree if max_k is None else max_k
        return Basis(self.rng.randint(0, max(top, 0)), self.rng.choice(self.cfg.alpha_pool))

    def nonunit_basis(self, max_k: int | None = None) -> Basis:
        while True:
            b = self.basis(max_k)
            if not b.is_unit:
                return b

    def maybe_basis(self, p_unit: float = 0.25) -> Basis:
        return UNIT if self.rng.random() < p_unit else self.nonunit_basis()

    def monomial(self, n: int, max_factors: int = 2, total_degree: int | None = None):
        """Tensor monomial on axes 1..n with bounded total polynomial degree."""
        budget = self.cfg.max_degree if total_degree is None else total_degree
        axes = self.rng.sample(range(1, n + 1), self.rng.randint(1, min(max_factors, n)))
        factors = [UNIT] * n
        for axis in axes:
            k = self.rng.randint(0, budget)
            budget -= k
            factors[axis - 1] = Basis(k, self.rng.choice(self.cfg.alpha_pool))
        return mono_trim(factors)

    def function(self, n: int | None = None) -> HierarchyElement:
        n = n or self.cfg.max_vars
        terms = {}
        for _ in range(self.rng.randint(1, 3)):
            terms[self.monomial(n, max_factors=n)] = self.scalar()
        return HierarchyElement(terms)

    # matrices
    def vector(self, axes) -> dict:
        return {a: x for a in axes if (x := self.entry())}

    def eliminant_vector(self, i: int, n: int) -> dict:
        return self.vector(range(i + 1, n + 1))

    def dense(self, n: int) -> SubstMatrix:
        return SubstMatrix.from_rows([[self.entry() for _ in range(n)] for _ in range(n)])

    def matrix(self, n: int) -> SubstMatrix:
        kind = self.rng.choice("LLTDEPGG")
        i = self.rng.randint(1, n)
        if kind == "L":
            return make_eliminant(i, self.eliminant_vector(i, n))
        if kind == "T":
            return make_transvection(i, self.vector(a for a in range(1, n + 1) if a != i))
        if kind == "D":
            return make_scaling(i, self.rng.choice((Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(0))))
        if kind == "E":
            return make_evaluation(i)
        if kind == "P":
            perm = list(range(1, n + 1))
            self.rng.shuffle(perm)
            return make_permutation(perm)
        return self.dense(n)

    def matrix_with_zero_column(self, n: int, j: int) -> SubstMatrix:
        return compose(self.dense(n), make_evaluation(j))

    # words
    def letter(self, n: int):
        r = self.rng.random()
        if r < 0.45:
            return Integ(self.rng.randint(1, n))
        if r < 0.7:
            return Coeff(self.monomial(n, total_degree=min(2, self.cfg.max_degree)))
        return Subst(self.matrix(n))

    def word(self, n: int | None = None, length: int | None = None) -> OperatorExpr:
        n = n or self.cfg.max_vars
        length = length or self.rng.randint(1, self.cfg.max_word_len)
        return OperatorExpr.word(*(self.letter(n) for _ in range(length)))
