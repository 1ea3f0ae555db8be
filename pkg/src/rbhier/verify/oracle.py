"""The action oracle: operators applied to concrete functions.

This is the ground truth against which every rewrite is checked.  It uses
only the hierarchy operations (substitute, integrate, multiply) and never
looks at the rewrite rules.
"""
from __future__ import annotations

from ..bialgebra import _collect
from ..hierarchy import HierarchyElement, integrate_axis, mono_times, substitute
from ..opring.words import Coeff, Integ, OperatorExpr, OperatorWord, Subst


def apply_word(word: OperatorWord, f: HierarchyElement) -> HierarchyElement:
    for a in reversed(word):
        if not f:
            return f
        if isinstance(a, Coeff):
            f = HierarchyElement._raw(_collect((mono_times(a.mono, m), c)
                                               for m, c in f.terms.items()))
        elif isinstance(a, Subst):
            f = substitute(a.matrix, f)
        else:
            f = integrate_axis(a.axis, f)
    return f


def apply(expr: OperatorExpr | OperatorWord, f: HierarchyElement) -> HierarchyElement:
    """``expr`` acting on ``f``; letters act right to left."""
    if isinstance(expr, OperatorWord):
        return apply_word(expr, f)
    out: dict = {}
    for w, c in expr.terms.items():
        _collect(((m, c * c2) for m, c2 in apply_word(w, f).terms.items()), out)
    return HierarchyElement._raw(out)
