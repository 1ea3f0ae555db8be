from fractions import Fraction as F

from hypothesis import given

from rbhier.bialgebra import (UNIT, Basis, Coefficient, Tensor, X, antipode, as_map, basis,
                              convolve_scalings, coproduct, coproduct_basis, counit,
                              counit_tensor, derivative, evaluation, integrate,
                              iterated_coproduct, multiply, rota_baxter_holds, scale_arg)
from strategies import bases, coefficients, small


def mono(k=0, alpha=0, c=1):
    return Coefficient.monomial(k, alpha, c)


def exp(alpha, c=1):
    return mono(0, alpha, c)


def tensor(*pairs):
    return Tensor(2, {(b1, b2): F(c) for b1, b2, c in pairs})


def test_multiply_examples():
    assert X * X == mono(2)
    assert multiply(mono(1, 1), exp(-1)) == X
    g = mono(2, F(1, 2), 3) + 1
    assert Coefficient.constant(1) * g == g


def test_scale_examples():
    f = mono(1, 1) + exp(2, 3)
    assert scale_arg(1, f) == f
    assert scale_arg(2, mono(1, 1)) == mono(1, 2, 2)
    assert scale_arg(0, X + 3) == Coefficient.constant(3)


def test_coproduct_examples():
    assert coproduct(mono(2)) == tensor((Basis(2, 0), UNIT, 1), (Basis(1, 0), Basis(1, 0), 2),
                                        (UNIT, Basis(2, 0), 1))
    assert coproduct(exp(3)) == tensor((Basis(0, 3), Basis(0, 3), 1))
    assert coproduct(Coefficient.constant(1)) == tensor((UNIT, UNIT, 1))


def test_iterated_coproduct_examples():
    x = Basis(1, 0)
    assert iterated_coproduct(3, X).terms == {(x, UNIT, UNIT): 1, (UNIT, x, UNIT): 1,
                                              (UNIT, UNIT, x): 1}
    f = mono(2, 1) + X
    assert iterated_coproduct(2, f) == coproduct(f)
    e = Basis(0, F(1, 2))
    assert iterated_coproduct(3, exp(F(1, 2))).terms == {(e, e, e): 1}


def test_counit_examples():
    assert counit(Coefficient.constant(1)) == 1
    assert counit(mono(1, 5)) == 0
    assert counit(exp(7, 2) + mono(3)) == 2


def test_integrate_examples():
    assert integrate(mono(2)) == mono(3, 0, F(1, 3))
    a = F(-2, 3)
    assert integrate(exp(a)) == exp(a, 1 / a) - Coefficient.constant(1 / a)
    assert integrate(mono(1, 1)) == mono(1, 1) - exp(1) + 1


def test_derivative_examples():
    assert derivative(mono(3)) == mono(2, 0, 3)
    assert derivative(exp(2)) == exp(2, 2)
    assert derivative(mono(1, 1) - exp(1) + 1) == mono(1, 1)


def test_antipode_examples():
    assert antipode(X) == -X
    assert antipode(exp(1)) == exp(-1)
    hopf = coproduct(mono(2)).map_slot(1, as_map(antipode)).contract()
    assert hopf == Coefficient()


def test_convolve_scalings_examples():
    assert convolve_scalings(1, 1, mono(2)) == mono(2, 0, 4)
    f = mono(2, 1) + X
    assert convolve_scalings(F(3, 2), 0, f) == scale_arg(F(3, 2), f)
    assert convolve_scalings(1, -1, exp(1)) == Coefficient.constant(1)


def test_basis_validation():
    assert basis(2, "1/2") == Basis(2, F(1, 2))
    assert UNIT.is_unit and not Basis(0, 1).is_unit


@given(coefficients(), coefficients())
def test_rota_baxter(f, g):
    assert rota_baxter_holds(f, g)


@given(coefficients())
def test_fundamental_theorem(f):
    assert derivative(integrate(f)) == f
    assert counit(integrate(f)) == 0
    assert f == evaluation(f) + integrate(derivative(f))


@given(coefficients())
def test_integrate_is_injective(f):
    assert bool(integrate(f)) == bool(f)


@given(coefficients(), coefficients())
def test_coproduct_is_multiplicative(f, g):
    lhs = coproduct(f * g)
    df, dg = coproduct(f), coproduct(g)
    rhs = Tensor(2, {})
    for (a1, b1), c1 in df.terms.items():
        for (a2, b2), c2 in dg.terms.items():
            rhs = rhs + Tensor(2, {(a1.times(a2), b1.times(b2)): c1 * c2})
    assert lhs == rhs


@given(coefficients())
def test_coassociative_and_counital(f):
    d = coproduct(f)
    assert d.map_slot(0, coproduct_basis) == d.map_slot(1, coproduct_basis)
    assert d.map_slot(0, counit_tensor).contract() == f
    assert d.map_slot(1, counit_tensor).contract() == f


@given(coefficients(), small, small)
def test_scalings_form_a_semiring(f, lam, mu):
    assert scale_arg(lam, scale_arg(mu, f)) == scale_arg(lam * mu, f)
    assert convolve_scalings(lam, mu, f) == scale_arg(lam + mu, f)


@given(coefficients(), small.filter(bool))
def test_diagonal_rule(f, lam):
    assert integrate(scale_arg(lam, f)) == scale_arg(lam, integrate(f)) * (1 / lam)


@given(bases)
def test_horizontal_rule(b):
    f = Coefficient({b: 1})
    lhs = coproduct(integrate(f))
    rhs = coproduct(f).map_slot(0, as_map(integrate)) + \
        coproduct(integrate(f)).map_slot(0, as_map(evaluation))
    assert lhs == rhs


def test_integral_powers():
    p1 = integrate(Coefficient.constant(1))
    power, iterated, fact = Coefficient.constant(1), Coefficient.constant(1), 1
    for i in range(1, 7):
        power, iterated, fact = power * p1, integrate(iterated), fact * i
        assert power == iterated * fact
