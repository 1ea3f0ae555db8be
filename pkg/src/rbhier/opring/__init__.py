"""Operator words over coefficients, substitutions and axis integrals."""
from .measure import Order, TermMeasure, compare, measure, segments
from .normal import (DEFAULT_BUDGET, STRATEGIES, BudgetExhausted, LineIntegrator,
                     MeasureViolation, Reducer, VolumeIntegrator, find_redex,
                     is_normal_form, normalize, volume_integrator)
from .rules import RULE_PRIORITY, Redex, apply_rule, find_redexes, line_form
from .words import (EMPTY, Coeff, Integ, OperatorExpr, OperatorWord, Subst, coeff,
                    coeff_at, compose_words, integ, subst, word_multiply)

__all__ = [
    "Coeff", "Subst", "Integ", "OperatorWord", "OperatorExpr", "EMPTY",
    "coeff", "coeff_at", "subst", "integ", "word_multiply", "compose_words",
    "Redex", "RULE_PRIORITY", "find_redex", "find_redexes", "apply_rule", "line_form",
    "measure", "compare", "segments", "Order", "TermMeasure",
    "normalize", "Reducer", "BudgetExhausted", "MeasureViolation", "DEFAULT_BUDGET",
    "STRATEGIES", "is_normal_form", "volume_integrator", "VolumeIntegrator", "LineIntegrator",
]
