"""The nine oriented rewrite rules and redex detection.

A word splits at its integrators into segments ``w_0 A_{i_1} w_1 ...``.  In a
canonical word every segment alternates coefficient and substitution
letters.  A segment after ``A_i`` is a *line segment* when it reads
``[b(x_i)] [L_i(v)]`` (both parts optional): a coefficient living on
``x_i`` alone followed by an eliminant in direction ``i``.

Rules, with ``g, h`` univariate basis functions placed on the indicated
axis and every window matched against whole segments where it matters:

1. ``M* c -> c[M] M*``
2. ``M* A_i -> 0`` when row ``i`` of ``M`` vanishes
3. ``A_j c -> c_< A_j c_>=``, pulling out factors on axes below ``j``
4. ``A_j c -> c_> A_j c_=``, pulling out factors on axes above ``j``
5. ``A_j g(x_j) M*`` with a pivot in column ``j`` and ``M`` not an
   eliminant in direction ``j``: move the bulk of ``M`` to the left
6. ``A_j g(x_j) M* -> (int g)(x_j) M*`` when column ``j`` of ``M`` vanishes
7. reorder two line integrators ``A_j .. A_i ..`` with ``i < j``
8. split two line integrators on the same axis when the left eliminant is
   nontrivial
9. ``A_j g(x_j) A_j -> (int g)(x_j) A_j - A_j (int g)(x_j)``
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..bialgebra import UNIT, Basis, _collect, integrate_basis
from ..hierarchy import (mono_factor, mono_place, mono_split, mono_support,
                         substitute_form, substitute_monomial)
from ..matrixsubst import (SubstMatrix, compose, eliminant_commute, make_eliminant,
                           make_evaluation, pivot_decompose, sparse_add)
from ..rational import ONE, ZERO
from .words import Coeff, Integ, OperatorExpr, OperatorWord, Subst, _raw

RULE_PRIORITY = (1, 2, 3, 4, 6, 5, 9, 8, 7)
_RANK = {r: n for n, r in enumerate(RULE_PRIORITY)}


@dataclass(frozen=True)
class Redex:
    rule: int
    position: int
    end: int  # window is word[position:end]

    def priority(self) -> int:
        return _RANK[self.rule]


def segment_end(word: OperatorWord, start: int) -> int:
    """Index of the next integrator at or after ``start`` (or ``len(word)``)."""
    for k in range(start, len(word)):
        if isinstance(word[k], Integ):
            return k
    return len(word)


def line_form(letters, axis: int) -> tuple[Basis, dict] | None:
    """``(g, v)`` if ``letters`` reads ``[g(x_axis)] [L_axis(v)]``, else None."""
    g, v = UNIT, {}
    k = 0
    if k < len(letters) and isinstance(letters[k], Coeff):
        mono = letters[k].mono
        if mono_support(mono) - {axis}:
            return None
        g = mono_factor(mono, axis)
        k += 1
    if k < len(letters) and isinstance(letters[k], Subst):
        v = letters[k].matrix.eliminant_vector(axis)
        if v is None:
            return None
        k += 1
    if k != len(letters):
        return None
    return g, v


def _coeff_on(letters, axis: int) -> Basis | None:
    """Coefficient part of a ``[g(x_axis)] M*`` segment, or None if malformed."""
    if len(letters) == 1 and isinstance(letters[0], Subst):
        return UNIT
    if (len(letters) == 2 and isinstance(letters[0], Coeff) and isinstance(letters[1], Subst)
            and mono_support(letters[0].mono) <= {axis}):
        return mono_factor(letters[0].mono, axis)
    return None


def redexes_at(word: OperatorWord, p: int) -> list[Redex]:
    """All rule windows starting at position ``p``."""
    out: list[Redex] = []
    a = word[p]
    n = len(word)
    if isinstance(a, Subst):
        if p + 1 < n:
            b = word[p + 1]
            if isinstance(b, Coeff):
                out.append(Redex(1, p, p + 2))
            elif isinstance(b, Integ) and a.matrix.row_is_zero(b.axis):
                out.append(Redex(2, p, p + 2))
        return out
    if not isinstance(a, Integ):
        return out
    j = a.axis
    end = segment_end(word, p + 1)
    seg = word[p + 1:end]
    if seg and isinstance(seg[0], Coeff):
        supp = mono_support(seg[0].mono)
        if any(s < j for s in supp):
            out.append(Redex(3, p, p + 2))
        if any(s > j for s in supp):
            out.append(Redex(4, p, p + 2))
    if seg and isinstance(seg[-1], Subst) and _coeff_on(seg, j) is not None:
        m = seg[-1].matrix
        if m.column_is_zero(j):
            out.append(Redex(6, p, end))
        elif m.eliminant_vector(j) is None:
            out.append(Redex(5, p, end))
    if end < n:
        first = line_form(seg, j)
        if first is not None:
            i = word[end].axis
            if i == j and not first[1]:
                out.append(Redex(9, p, end + 1))
            if i <= j:
                end2 = segment_end(word, end + 1)
                if line_form(word[end + 1:end2], i) is not None:
                    if i == j and first[1]:
                        out.append(Redex(8, p, end2))
                    elif i < j:
                        out.append(Redex(7, p, end2))
    return out


def find_redexes(word: OperatorWord) -> list[Redex]:
    out = []
    for p in range(len(word)):
        out.extend(redexes_at(word, p))
    return out


# -- right-hand sides --------------------------------------------------------

def _w(*letters) -> OperatorWord:
    return OperatorWord(letters)


def _acc(out: dict, word: OperatorWord, c: Fraction):
    _collect([(word, c)], out)


def _rule1(window, _ambient) -> dict:
    m = window[0].matrix
    out: dict = {}
    for mono, c in substitute_monomial(m, window[1].mono).items():
        _acc(out, _w(Coeff(mono), Subst(m)), c)
    return out


def _rule2(window, _ambient) -> dict:
    return {}


def _pull_out(window, pick) -> dict:
    j = window[0].axis
    mono = window[1].mono
    moved = {s for s in mono_support(mono) if pick(s, j)}
    outside, stay = mono_split(mono, moved)
    return {_w(Coeff(outside), Integ(j), Coeff(stay)): ONE}


def _rule3(window, _ambient) -> dict:
    return _pull_out(window, lambda s, j: s < j)


def _rule4(window, _ambient) -> dict:
    return _pull_out(window, lambda s, j: s > j)


def _rule5(window, _ambient) -> dict:
    """Pivot step.

    With ``i`` the first row hit by column ``j`` and ``a = M[i][j]``,
    ``M = L_i(l) M~`` where column ``j`` of ``M~`` is ``a e_i``.  The
    integral over ``x_j`` turns into one over ``x_i`` after the change of
    variables ``s = a x_j + (rest of row i)``; ``g`` then has to be read at
    ``(x_j - sum_{m != j} M[i][m] x_m) / a`` and its ``x_j`` part moves to
    ``x_i``.  The lower limit contributes the ``E_j`` term.
    """
    j = window[0].axis
    g = _coeff_on(window[1:], j)
    m = window[-1].matrix
    piv = pivot_decompose(m, j)
    i = piv.index
    a = m.entry(i, j)
    form = {s: -x / a for s, x in m.row_support(i).items() if s != j}
    form[j] = ONE / a
    tail = piv.eliminant
    reduced = piv.reduced
    reduced_ev = compose(reduced, make_evaluation(j))
    out: dict = {}
    for mono, c in substitute_form(g, form).terms.items():
        inner = mono_place(mono_factor(mono, j), i)
        _, outer = mono_split(mono, {j})
        rest = (Integ(i), Coeff(inner), Subst(tail))
        _acc(out, _w(Coeff(outer), Subst(reduced), *rest), c / a)
        _acc(out, _w(Coeff(outer), Subst(reduced_ev), *rest), -c / a)
    return out


def _rule6(window, _ambient) -> dict:
    j = window[0].axis
    g = _coeff_on(window[1:], j)
    m = window[-1].matrix
    out: dict = {}
    for b, c in integrate_basis(g):
        _acc(out, _w(Coeff(mono_place(b, j)), Subst(m)), c)
    return out


def _rule9(window, _ambient) -> dict:
    j = window[0].axis
    g = line_form(window[1:-1], j)[0]
    out: dict = {}
    for b, c in integrate_basis(g):
        big_g = Coeff(mono_place(b, j))
        _acc(out, _w(big_g, Integ(j)), c)
        _acc(out, _w(Integ(j), big_g), -c)
    return out


def _split_lines(window):
    j = window[0].axis
    mid = segment_end(window, 1)
    h, w = line_form(window[1:mid], j)
    i = window[mid].axis
    g, v = line_form(window[mid + 1:], i)
    return j, h, w, i, g, v


def _rule7(window, _ambient) -> dict:
    """``A_j h L_j(w)* A_i g L_i(v)*`` with ``i < j``.

    ``L_j(w)*`` slides right past ``A_i g(x_i)`` and the two eliminants swap
    (``L_i(v) L_j(w) = L_j(w) L_i(v')``).  What is left, ``A_j h L_i(v')*``,
    is a pivot step whose pivot sits on the diagonal.
    """
    j, h, w, i, g, v = _split_lines(window)
    v_new = eliminant_commute(j, {r: -x for r, x in w.items()}, i, v)
    vj = v.get(j, ZERO)
    out: dict = {}
    for mono, c in substitute_form(h, {j: ONE, i: -vj}).terms.items():
        eta1 = g.times(mono_factor(mono, i))
        eta = mono_factor(mono, j)
        word = _w(Integ(i), Coeff(mono_place(eta1, i)), Subst(make_eliminant(i, v_new)),
                  Integ(j), Coeff(mono_place(eta, j)), Subst(make_eliminant(j, w)))
        _acc(out, word, c)
        _acc(out, _w(Subst(make_evaluation(j)), *word), -c)
    return out


def _rule8(window, ambient: int) -> dict:
    """``A_i h L_i(w)* A_i g L_i(v)*`` with ``w != 0``.

    Let ``k`` be the first row where ``w`` is nonzero.  Swapping the order
    of the two integrals and substituting ``t -> x_k + w_k t`` in the outer
    one turns it into an integral over ``x_k``.  The original value of
    ``x_k`` has to be remembered in a spare variable, which is folded back
    into ``x_k`` before anything else happens.
    """
    i, h, w, _, g, v = _split_lines(window)
    k = min(w)
    wk = w[k]
    w_rest = {r: x / wk for r, x in w.items() if r > k}
    w_bar = {k: wk}
    v_new = eliminant_commute(k, {r: -x for r, x in w_rest.items()}, i, v)
    vk = v.get(k, ZERO)
    slack = ambient + 1
    lead = make_eliminant(k, {r: -x for r, x in w_rest.items()})
    back = make_eliminant(k, w_rest)
    form = {k: ONE / wk, i: -vk / wk, slack: -ONE / wk}
    out: dict = {}
    for mono, c in substitute_form(h, form).terms.items():
        c = c / wk
        chi2 = Coeff(mono_place(mono_factor(mono, slack), k))
        chi1 = Coeff(mono_place(g.times(mono_factor(mono, i)), i))
        chi = Coeff(mono_place(mono_factor(mono, k), k))
        end = (Integ(k), chi, Subst(back))
        _acc(out, _w(chi2, Subst(lead), Subst(make_eliminant(i, w_bar)), Integ(i), chi1,
                     Subst(make_eliminant(i, v_new)), *end), c)
        _acc(out, _w(chi2, Subst(lead), Integ(i), chi1,
                     Subst(make_eliminant(i, sparse_add(v_new, w_bar))), *end), -c)
    return out


_RULES = {1: _rule1, 2: _rule2, 3: _rule3, 4: _rule4, 5: _rule5, 6: _rule6,
          7: _rule7, 8: _rule8, 9: _rule9}


def rewrite_window(word: OperatorWord, redex: Redex) -> dict:
    """Right-hand side of ``redex`` as ``{word: coefficient}``, window only."""
    window = word[redex.position:redex.end]
    return _RULES[redex.rule](window, word.max_axis())


def apply_rule(word: OperatorWord, redex: Redex) -> OperatorExpr:
    """Replace the window of ``redex`` in ``word`` by the rule's right side."""
    prefix = word[:redex.position]
    suffix = word[redex.end:]
    out: dict = {}
    for w, c in rewrite_window(word, redex).items():
        _collect([(OperatorWord(prefix + w + suffix), c)], out)
    return _raw(out)
