"""Normalisation driver and the shape of normal forms.

A word is in normal form when it reads ``b M* J_1 ... J_r`` with ``b`` a
coefficient letter, ``M`` a substitution and each ``J`` a line integrator
``A_i b(x_i) L_i(v)*`` whose axes strictly increase; when ``r > 0`` the row
of ``M`` belonging to the first axis must not vanish.  This is checked
structurally by :func:`is_normal_form`, independently of redex search.
"""
from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..bialgebra import UNIT, Basis, _collect
from ..matrixsubst import IDENTITY, SubstMatrix
from .measure import Order, TermMeasure, measure
from .rules import RULE_PRIORITY, Redex, apply_rule, find_redexes, line_form
from .words import Coeff, Integ, OperatorExpr, OperatorWord, Subst, _raw

DEFAULT_BUDGET = 100_000
STRATEGIES = ("leftmost", "rightmost", "random", "priority")


class BudgetExhausted(RuntimeError):
    """Raised when normalisation needs more steps than allowed."""

    def __init__(self, steps: int, partial: OperatorExpr):
        super().__init__(f"rewrite budget exhausted after {steps} steps")
        self.steps = steps
        self.partial = partial


class MeasureViolation(AssertionError):
    def __init__(self, rule: int, before: OperatorWord, after: OperatorWord):
        super().__init__(f"rule {rule} did not decrease the measure: {before!r} -> {after!r}")
        self.rule = rule
        self.before = before
        self.after = after


def choose_redex(redexes: list[Redex], strategy: str, rng: random.Random | None = None) -> Redex:
    if strategy == "leftmost":
        return min(redexes, key=lambda r: (r.position, r.priority()))
    if strategy == "rightmost":
        return min(redexes, key=lambda r: (-r.position, r.priority()))
    if strategy == "priority":
        return min(redexes, key=lambda r: (r.priority(), r.position))
    if strategy == "random":
        return (rng or random).choice(redexes)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def find_redex(word: OperatorWord, strategy: str = "leftmost",
               rng: random.Random | None = None) -> Redex | None:
    found = find_redexes(word)
    return choose_redex(found, strategy, rng) if found else None


class _Largest:
    """Heap entry ordering measures from the largest down."""

    __slots__ = ("measure", "key")

    def __init__(self, m: TermMeasure):
        self.measure = m
        self.key = (m.segments, m.keys)

    def __lt__(self, other: "_Largest") -> bool:
        return self.key > other.key


@dataclass
class Reducer:
    """Rewrites operator expressions to normal form.

    ``check_measure`` asserts after every step that each produced word is
    strictly smaller than the rewritten one; ``stats`` records how often
    each rule fired.
    """

    strategy: str = "leftmost"
    max_steps: int = DEFAULT_BUDGET
    seed: int | str = 0
    check_measure: bool = True
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        self.rng = random.Random(self.seed)
        self.steps = 0

    def normalize(self, expr: OperatorExpr) -> OperatorExpr:
        # Words are rewritten largest measure first.  Every rewrite yields
        # strictly smaller words, so a popped word never reappears and each
        # distinct word is rewritten at most once, with copies reached along
        # different paths merged (or cancelled) beforehand.
        pending: dict = {}
        queue: list = []
        order = itertools.count()
        done: dict = {}
        steps = 0

        def push(items):
            for w, c in items:
                fresh = w not in pending
                _collect([(w, c)], pending)
                if fresh and w in pending:
                    heapq.heappush(queue, (_Largest(measure(w)), next(order), w))

        push(expr.terms.items())
        while queue:
            size, _, word = heapq.heappop(queue)
            c = pending.pop(word, None)
            if c is None:
                continue
            redex = find_redex(word, self.strategy, self.rng)
            if redex is None:
                _collect([(word, c)], done)
                continue
            if steps >= self.max_steps:
                _collect([(word, c)], pending)
                _collect(pending.items(), done)
                raise BudgetExhausted(steps, _raw(done))
            steps += 1
            self.stats[redex.rule] = self.stats.get(redex.rule, 0) + 1
            result = apply_rule(word, redex)
            if self.check_measure:
                for w in result.terms:
                    if measure(w).compare(size.measure) is not Order.LESS:
                        raise MeasureViolation(redex.rule, word, w)
            push((w, c * c2) for w, c2 in result.terms.items())
        self.steps += steps
        return _raw(done)


def normalize(expr: OperatorExpr, max_steps: int = DEFAULT_BUDGET,
              strategy: str = "leftmost", seed: int | str = 0,
              check_measure: bool = True) -> OperatorExpr:
    """Normal form of ``expr`` under the given redex strategy."""
    return Reducer(strategy, max_steps, seed, check_measure).normalize(expr)


# -- normal form shape -------------------------------------------------------

@dataclass(frozen=True)
class LineIntegrator:
    """``A_axis coeff(x_axis) L_axis(shift)*``."""

    axis: int
    coeff: Basis = UNIT
    shift: tuple = ()  # sorted (row, value) pairs

    @property
    def shift_vector(self) -> dict[int, Fraction]:
        return dict(self.shift)


@dataclass(frozen=True)
class VolumeIntegrator:
    """``coeff M* J_1 ... J_r``."""

    coeff: tuple
    matrix: SubstMatrix
    lines: tuple[LineIntegrator, ...]


def volume_integrator(word: OperatorWord) -> VolumeIntegrator | None:
    """Parse a word into normal-form shape; None if it is not one."""
    k = 0
    n = len(word)
    b: tuple = ()
    m = IDENTITY
    if k < n and isinstance(word[k], Coeff):
        b = word[k].mono
        k += 1
    if k < n and isinstance(word[k], Subst):
        m = word[k].matrix
        k += 1
    lines = []
    while k < n:
        a = word[k]
        if not isinstance(a, Integ):
            return None
        end = k + 1
        while end < n and not isinstance(word[end], Integ):
            end += 1
        parsed = line_form(word[k + 1:end], a.axis)
        if parsed is None:
            return None
        g, v = parsed
        lines.append(LineIntegrator(a.axis, g, tuple(sorted(v.items()))))
        k = end
    axes = [j.axis for j in lines]
    if any(x >= y for x, y in zip(axes, axes[1:])):
        return None
    if lines and m.row_is_zero(lines[0].axis):
        return None
    return VolumeIntegrator(b, m, tuple(lines))


def is_normal_form(expr: OperatorExpr | OperatorWord) -> bool:
    if isinstance(expr, OperatorWord):
        return volume_integrator(expr) is not None
    return all(volume_integrator(w) is not None for w in expr.terms)


__all__ = ["BudgetExhausted", "MeasureViolation", "Reducer", "normalize", "find_redex",
           "choose_redex", "is_normal_form", "volume_integrator", "VolumeIntegrator",
           "LineIntegrator", "STRATEGIES", "DEFAULT_BUDGET", "RULE_PRIORITY"]
