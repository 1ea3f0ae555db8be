"""Termination measure for the rewrite system.

A word ``w_0 A_{i_1} w_1 ... A_{i_r} w_r`` is measured segment by segment.
Each segment ``w_k`` (``k >= 1``) gets the key

    (defect, -i_k, #substitutions, inversions, coefficient support)

where ``defect`` is 0 for a line segment and 1 otherwise, ``inversions``
counts pairs (substitution, later coefficient) and the support term adds
up how many axes the coefficient letters touch.  ``w_0`` uses the same key
with ``defect = 0`` and index 0.  Words compare first by number of
segments, then lexicographically on the keys read from the right end.

Every rule strictly lowers this measure:

* rule 1 lowers the inversion count (merging only lowers the first two
  counters further),
* rules 3/4 keep everything but the support of the moved coefficient,
* rule 5 turns a defective segment into a line segment,
* rules 6 and 9 delete an integrator, rule 2 deletes the word,
* rules 7 and 8 leave a line segment with a larger axis at the right end
  of the window.

The index component stays bounded by the largest axis of the input, so
the order is well founded on everything reachable from a given word.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .rules import line_form
from .words import Coeff, Integ, OperatorWord, Subst


class Order(enum.Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"
    INCOMPARABLE = "?"


def segments(word: OperatorWord) -> list[tuple[int, tuple]]:
    """``[(axis, letters), ...]`` with axis 0 for the leading segment."""
    out = []
    axis, current = 0, []
    for a in word:
        if isinstance(a, Integ):
            out.append((axis, tuple(current)))
            axis, current = a.axis, []
        else:
            current.append(a)
    out.append((axis, tuple(current)))
    return out


def segment_key(axis: int, letters) -> tuple[int, ...]:
    defect = 0 if axis == 0 or line_form(letters, axis) is not None else 1
    substs = inversions = supp = 0
    for a in letters:
        if isinstance(a, Subst):
            substs += 1
        elif isinstance(a, Coeff):
            inversions += substs
            supp += len(a.support)
    return (defect, -axis, substs, inversions, supp)


@dataclass(frozen=True)
class TermMeasure:
    segments: int
    keys: tuple  # segment keys, rightmost first

    def compare(self, other: "TermMeasure") -> Order:
        a = (self.segments, self.keys)
        b = (other.segments, other.keys)
        if a < b:
            return Order.LESS
        if a > b:
            return Order.GREATER
        return Order.EQUAL


def measure(word: OperatorWord) -> TermMeasure:
    segs = segments(word)
    return TermMeasure(len(segs), tuple(segment_key(ax, ls) for ax, ls in reversed(segs)))


def compare(w1: OperatorWord, w2: OperatorWord) -> Order:
    return measure(w1).compare(measure(w2))
