"""Integro-differential operators on hierarchies of exponential polynomials.

The coefficient algebra (:mod:`rbhier.bialgebra`), its multivariate
hierarchy with linear substitutions (:mod:`rbhier.hierarchy`,
:mod:`rbhier.matrixsubst`), the operator ring and its rewrite system
(:mod:`rbhier.opring`), and an exact verification harness
(:mod:`rbhier.verify`).
"""
from .bialgebra import Basis, Coefficient, basis
from .hierarchy import HierarchyElement, substitute
from .matrixsubst import SubstMatrix
from .opring import OperatorExpr, OperatorWord, is_normal_form, normalize
from .syntax import parse_function, parse_operator, render_function, render_operator
from .verify import apply

__all__ = ["Basis", "Coefficient", "basis", "HierarchyElement", "substitute", "SubstMatrix",
           "OperatorExpr", "OperatorWord", "normalize", "is_normal_form", "parse_function",
           "parse_operator", "render_function", "render_operator", "apply"]
__version__ = "0.1.0"
