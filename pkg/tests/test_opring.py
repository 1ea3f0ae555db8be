import random

import pytest
from hypothesis import given, settings

from rbhier.matrixsubst import SubstMatrix, make_eliminant
from rbhier.opring import (EMPTY, Coeff, Integ, OperatorExpr, OperatorWord, Order, Reducer,
                           Subst, apply_rule, find_redex, find_redexes, is_normal_form, measure,
                           normalize, volume_integrator)
from rbhier.opring.normal import BudgetExhausted
from rbhier.syntax import parse_function as fn, parse_operator as op
from rbhier.verify import apply
from strategies import functions, words

M = SubstMatrix.from_rows


def word(text):
    (w,) = op(text).words()
    return w


def test_letters_merge_on_construction():
    assert op("x1 x2") == op("x1*x2")
    assert OperatorWord([Coeff(()), Integ(1)]) == OperatorWord([Integ(1)])
    t = make_eliminant(1, [1])
    assert OperatorWord([Subst(t), Subst(make_eliminant(1, [-1]))]) == EMPTY


def test_substitutions_compose_contravariantly():
    a, b = M([[0, 1], [1, 1]]), M([[2, 0], [1, 1]])
    merged = OperatorWord([Subst(a), Subst(b)])
    f = fn("x1^2*x2 + exp(x2)")
    assert apply(merged, f) == apply(OperatorWord([Subst(a)]), apply(OperatorWord([Subst(b)]), f))


def test_word_multiply_unit():
    w = op("A1 x1 A2")
    assert w * 1 == w == 1 * w
    assert w * OperatorExpr.scalar(0) == OperatorExpr()


def test_find_redex_examples():
    assert find_redex(word("[[0,1],[1,0]]* x1")).rule == 1
    assert find_redex(word("[[0,1],[1,0]]* x1")).position == 0
    assert find_redex(word("x1 A1 x1 A2")) is None
    r = find_redex(word("A2 A1"))
    assert (r.rule, r.position) == (7, 0)


def test_rule9_example():
    w = word("A1 A1")
    (r,) = find_redexes(w)
    assert r.rule == 9
    assert apply_rule(w, r) == op("x1 A1 - A1 x1")
    assert apply(w, fn("1")) == apply(op("x1 A1 - A1 x1"), fn("1")) == fn("1/2*x1^2")


def test_rule7_example():
    w = word("A2 A1")
    r = find_redex(w)
    assert apply_rule(w, r) == op("A1 A2 - E(2)* A1 A2")
    f = fn("x1*x2")
    assert apply(w, f) == apply(op("A1 A2 - E(2)* A1 A2"), f) == fn("1/4*x1^2*x2^2")


def test_rule5_example():
    w = word("A1 exp(x1) [[0,2],[3,4]]*")
    r = find_redex(w)
    assert r.rule == 5
    expect = op("1/3 exp(-4/3*x2) [[0,2],[3,4]]* A2 exp(1/3*x2)"
                " - 1/3 exp(-4/3*x2) [[0,2],[0,4]]* A2 exp(1/3*x2)")
    assert apply_rule(w, r) == expect


def test_normalize_examples():
    assert normalize(op("A1")) == op("A1")
    assert normalize(op("[[1,1],[0,1]]* x1^2")) == \
        op("(x1^2 + 2*x1*x2 + x2^2) [[1,1],[0,1]]*")
    assert normalize(op("A1 A1")) == op("x1 A1 - A1 x1")
    assert normalize(op("A3 x1*x2 A1 exp(x2) A2")) == \
        op("x1*x2*exp(x2) A1 A2 A3 - x1*x2*exp(x2) E(3)* A1 A2 A3")


def test_is_normal_form_examples():
    assert is_normal_form(word("x2 [[1,1],[2,1]]* A1 x1 L(1; 0, 3)* A3 exp(x3)"))
    assert not is_normal_form(word("A1 A1"))
    assert not is_normal_form(word("E(2)* A2"))
    vol = volume_integrator(word("x2 [[1,1],[2,1]]* A1 x1 L(1; 0, 3)* A3 exp(x3)"))
    assert [j.axis for j in vol.lines] == [1, 3]
    assert vol.lines[0].shift_vector == {3: 3}
    assert vol.matrix == M([[1, 1], [2, 1]])


def test_measure_examples():
    one = measure(EMPTY)
    for text in ("A1", "x1", "[[0,1],[1,0]]*", "A1 A1"):
        assert one.compare(measure(word(text))) is Order.LESS
    w = word("A1 A1")
    for r_word in apply_rule(w, find_redex(w)).words():
        assert measure(r_word).compare(measure(w)) is Order.LESS
    w = word("A2 A1")
    for r_word in apply_rule(w, find_redex(w)).words():
        assert measure(r_word).compare(measure(w)) is Order.LESS


def test_budget_is_enforced():
    with pytest.raises(BudgetExhausted) as err:
        normalize(op("A3 A2 A1 A3 A2 A1"), max_steps=3)
    assert err.value.steps == 3
    assert err.value.partial


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        Reducer("sideways")


def test_reducer_counts_rules():
    red = Reducer("leftmost")
    red.normalize(op("A2 A1 A1"))
    assert red.steps == sum(red.stats.values()) > 0
    assert set(red.stats) <= set(range(1, 10))


@settings(max_examples=60, deadline=None)
@given(words(3, 5), functions(3, 2, 2))
def test_normalize_sound_and_normal(w, f):
    nf = normalize(w)
    assert is_normal_form(nf)
    assert apply(nf, f) == apply(w, f)
    assert normalize(nf) == nf


@settings(max_examples=40, deadline=None)
@given(words(3, 5))
def test_every_redex_is_sound(w):
    f = fn("x1^2*exp(x2)*x3 + x2 - 2*exp(-x1)*x3^2")
    for expr_word in w.words():
        for r in find_redexes(expr_word):
            assert apply(apply_rule(expr_word, r), f) == apply(expr_word, f)


@settings(max_examples=30, deadline=None)
@given(words(3, 5))
def test_strategies_agree_semantically(w):
    f = fn("x1*x2^2*exp(x3) + exp(1/2*x1)")
    forms = [Reducer(s, seed=1).normalize(w) for s in ("leftmost", "rightmost", "priority", "random")]
    assert len({apply(nf, f) for nf in forms}) == 1


def test_random_strategy_is_seeded():
    w = op("A3 x1 A2 [[1,1,1],[0,1,0],[1,0,1]]* A1 A1")
    a = Reducer("random", seed=7).normalize(w)
    b = Reducer("random", seed=7).normalize(w)
    assert a == b
    assert find_redex(word("A2 A1"), "random", random.Random(0)) is not None
