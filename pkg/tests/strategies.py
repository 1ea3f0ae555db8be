"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from rbhier.bialgebra import Basis, Coefficient
from rbhier.hierarchy import HierarchyElement, mono_trim
from rbhier.matrixsubst import SubstMatrix
from rbhier.opring.words import Coeff, Integ, OperatorExpr, Subst

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
nonzero = small.filter(bool)
alphas = st.sampled_from([Fraction(a) for a in ("0", "1", "-1", "1/2", "-1/2", "2", "-2")])
bases = st.builds(Basis, st.integers(0, 3), alphas)


def coefficients(max_terms=3):
    return st.dictionaries(bases, nonzero, max_size=max_terms).map(Coefficient)


def monomials(n=3, max_k=2):
    return st.lists(st.builds(Basis, st.integers(0, max_k), alphas), max_size=n).map(mono_trim)


def functions(n=3, max_terms=3, max_k=2):
    return st.dictionaries(monomials(n, max_k), nonzero, max_size=max_terms).map(HierarchyElement)


def matrices(n=3):
    entries = st.sampled_from([Fraction(0)] * 3 + [Fraction(a) for a in ("1", "-1", "2", "1/2")])
    return st.integers(1, n).flatmap(
        lambda d: st.lists(st.lists(entries, min_size=d, max_size=d), min_size=d, max_size=d)
    ).map(SubstMatrix.from_rows)


def letters(n=3):
    return st.one_of(
        st.integers(1, n).map(Integ),
        monomials(n, 1).filter(bool).map(Coeff),
        matrices(n).filter(lambda m: not m.is_identity()).map(Subst),
    )


def words(n=3, max_len=5):
    return st.lists(letters(n), max_size=max_len).map(lambda ls: OperatorExpr.word(*ls))
