"""Floating-point evaluation used only to localise failures of exact checks."""
from __future__ import annotations

from fractions import Fraction

import mpmath

from ..hierarchy import HierarchyElement

DEFAULT_DPS = 40
DEFAULT_TOL = mpmath.mpf("1e-20")


def evaluate(f: HierarchyElement, point, dps: int = DEFAULT_DPS):
    """Value of ``f`` at ``point`` (a sequence of rationals, x_1 first)."""
    with mpmath.workdps(dps):
        xs = [mpmath.mpf(q.numerator) / q.denominator for q in map(Fraction, point)]
        total = mpmath.mpf(0)
        for mono, c in f.items():
            term = mpmath.mpf(c.numerator) / c.denominator
            for x, b in zip(xs, mono):
                a = mpmath.mpf(b.alpha.numerator) / b.alpha.denominator
                term *= x ** b.k * mpmath.exp(a * x)
            total += term
        return +total


def discrepancy(f: HierarchyElement, g: HierarchyElement, point, dps: int = DEFAULT_DPS):
    with mpmath.workdps(dps):
        return abs(evaluate(f, point, dps) - evaluate(g, point, dps))


def close(f: HierarchyElement, g: HierarchyElement, point, dps: int = DEFAULT_DPS,
          tol=DEFAULT_TOL) -> bool:
    return discrepancy(f, g, point, dps) <= tol
