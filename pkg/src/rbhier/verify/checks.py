"""Randomised and exhaustive checks against the action oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

import mpmath

from .. import bialgebra as B
from ..bialgebra import Basis, Coefficient, Tensor, as_map
from ..hierarchy import (HierarchyElement, duhamel_convolve, integrate_axis, mono_place,
                         substitute, substitute_form)
from ..matrixsubst import (SubstMatrix, compose, cutoff, make_eliminant, make_evaluation,
                           make_permutation, make_scaling, make_transvection)
from ..opring.measure import Order, measure
from ..opring.normal import BudgetExhausted, MeasureViolation, is_normal_form, normalize
from ..opring.rules import apply_rule, redexes_at
from ..opring.words import (Coeff, Integ, OperatorExpr, OperatorWord, Subst, coeff, coeff_at,
                            integ, subst)
from ..rational import ONE
from ..syntax import render_function, render_operator, render_word
from . import numeric
from .oracle import apply
from .sampling import DEFAULT_ALPHAS, Sampler, TrialConfig

MAX_REPORTED_FAILURES = 5


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    failed: int = 0

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, detail: str = ""):
        self.trials += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(detail)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "trials": self.trials,
                "failed": self.failed, "failures": list(self.failures)}


def _agree(lhs, rhs, functions) -> str | None:
    """None when ``lhs`` and ``rhs`` act identically on every test function.

    On a mismatch the message carries the floating-point gap at a fixed
    point, which separates real errors from canonicalisation slips (gap 0).
    """
    for f in functions:
        a = lhs(f) if callable(lhs) else apply(lhs, f)
        b = rhs(f) if callable(rhs) else apply(rhs, f)
        if a != b:
            point = [Fraction(1, k + 2) for k in range(max(a.max_axis(), b.max_axis(), 1))]
            gap = numeric.discrepancy(a, b, point)
            return f"differs on f = {render_function(f)} (numeric gap {mpmath.nstr(gap, 5)})"
    return None


# -- rule soundness ----------------------------------------------------------

def _line(s: Sampler, axis: int, n: int, p_zero: float = 0.25) -> tuple:
    g = s.maybe_basis()
    v = {} if s.rng.random() < p_zero else s.eliminant_vector(axis, n)
    return coeff_at(g, axis), Subst(make_eliminant(axis, v))


def _candidate(rule: int, s: Sampler, n: int) -> OperatorWord:
    rng = s.rng
    j = rng.randint(1, n)
    if rule == 1:
        return OperatorWord([Subst(s.matrix(n)), Coeff(s.monomial(n))])
    if rule == 2:
        return OperatorWord([Subst(compose(make_evaluation(j), s.dense(n))), Integ(j)])
    if rule in (3, 4):
        return OperatorWord([Integ(j), Coeff(s.monomial(n, max_factors=n))])
    if rule == 5:
        return OperatorWord([Integ(j), coeff_at(s.maybe_basis(), j),
                             Subst(s.dense(n) if rng.random() < 0.6 else s.matrix(n))])
    if rule == 6:
        return OperatorWord([Integ(j), coeff_at(s.maybe_basis(), j),
                             Subst(s.matrix_with_zero_column(n, j))])
    if rule == 7:
        i = rng.randint(1, max(1, j - 1))
        return OperatorWord([Integ(j), *_line(s, j, n), Integ(i), *_line(s, i, n)])
    if rule == 8:
        i = rng.randint(1, max(1, n - 1))
        w = s.eliminant_vector(i, n)
        return OperatorWord([Integ(i), coeff_at(s.maybe_basis(), i), Subst(make_eliminant(i, w)),
                             Integ(i), *_line(s, i, n)])
    if rule == 9:
        return OperatorWord([Integ(j), coeff_at(s.maybe_basis(), j), Integ(j)])
    raise ValueError(f"there is no rule {rule}")


def rule_instance(rule: int, s: Sampler, n: int, attempts: int = 200):
    """Random word whose leading window is a redex of ``rule``."""
    for _ in range(attempts):
        w = _candidate(rule, s, n)
        for r in redexes_at(w, 0) if w else ():
            if r.rule == rule:
                return w, r
    raise RuntimeError(f"could not sample an instance of rule {rule} with {n} variables")


def check_rule(rule: int, cfg: TrialConfig = TrialConfig(), functions: int = 5) -> CheckResult:
    """Soundness of one rule on random instances, plus strict measure decrease."""
    result = CheckResult(f"rule {rule}")
    low = 2 if rule in (3, 4, 7, 8) else 1
    for t in range(cfg.trials):
        s = Sampler(cfg, cfg.rng("rule", rule, t))
        n = s.rng.randint(low, max(low, cfg.max_vars))
        word, redex = rule_instance(rule, s, n)
        rhs = apply_rule(word, redex)
        before = measure(word)
        bad = [w for w in rhs.terms if measure(w).compare(before) is not Order.LESS]
        detail = _agree(OperatorExpr({word: 1}), rhs, [s.function(n) for _ in range(functions)])
        if bad:
            detail = f"measure did not decrease: {render_word(bad[0])}"
        result.record(detail is None, f"{render_word(word)}: {detail}")
    return result


def check_rules(cfg: TrialConfig = TrialConfig(), functions: int = 5) -> list[CheckResult]:
    return [check_rule(r, cfg, functions) for r in range(1, 10)]


# -- hierarchy identities ----------------------------------------------------

def _commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b - b * a


def _scaling(s: Sampler, n: int):
    i = s.rng.randint(1, n)
    lam = s.scalar()
    d = subst(make_scaling(i, lam))
    return integ(i) * d, (1 / lam) * d * integ(i), n


def _transvection(s: Sampler, n: int):
    j = s.rng.randint(1, n)
    i = s.rng.choice([a for a in range(1, n + 1) if a != j] or [n + 1])
    t = subst(make_transvection(j, {i: 1}))
    return integ(j) * t, (1 - subst(make_evaluation(j))) * t * integ(j), n


def _transvection_general(s: Sampler, n: int):
    i = s.rng.randint(1, n)
    t = subst(make_transvection(i, s.vector(a for a in range(1, n + 2) if a != i)))
    return integ(i) * t, (1 - subst(make_evaluation(i))) * t * integ(i), n


def _vertical_parts(s: Sampler, n: int):
    n = max(n, 2)
    j = s.rng.randint(1, n - 1)
    i = s.rng.randint(j, n - 1)
    tail = s.vector(range(i + 2, n + 1))
    top = {i + 1: ONE}
    return n, j, i + 1, top, tail


def _vertical(s: Sampler, n: int):
    n, j, k, top, tail = _vertical_parts(s, n)
    lhs = integ(j) * subst(make_eliminant(j, {**top, **tail})) * integ(j)
    bracket = _commutator(subst(make_eliminant(j, top)), integ(j))
    neg = {r: -x for r, x in tail.items()}
    rhs = subst(make_eliminant(k, neg)) * bracket * integ(k) * subst(make_eliminant(k, tail))
    return lhs, rhs, n


def _vertical_slack(s: Sampler, n: int):
    """Variant carrying a coefficient ``g(x_j)``; valid for functions of x_1..x_n."""
    n, j, k, top, tail = _vertical_parts(s, n)
    g = s.nonunit_basis()
    lhs = integ(j) * coeff(HierarchyElement({mono_place(g, j): 1})) \
        * subst(make_eliminant(j, {**top, **tail})) * integ(j)
    bracket = _commutator(subst(make_eliminant(j, top)), integ(j))
    g_bar = coeff(substitute_form(g, {k: 1, n + 1: -1}))
    fold = SubstMatrix.from_rows([[1 if c == r else 0 for c in range(n + 1)] for r in range(n)]
                                 + [[1 if c == k - 1 else 0 for c in range(n + 1)]])
    neg = {r: -x for r, x in tail.items()}
    rhs = (subst(make_eliminant(k, neg)) * subst(fold) * bracket * integ(k) * g_bar
           * subst(make_eliminant(k, tail)))
    return lhs, rhs, n


def _vertical_alt(s: Sampler, n: int):
    n = max(n, 2)
    lam_set = sorted(s.rng.sample(range(1, n), s.rng.randint(1, n - 1)))
    low = lam_set[0]
    lhs = integ(1) * subst(make_eliminant(1, {i + 1: 1 for i in lam_set})) * integ(1)
    rest = {i + 1: ONE for i in lam_set[1:]}
    bracket = _commutator(subst(make_eliminant(1, {low + 1: 1})), integ(1))
    rhs = (subst(make_eliminant(low + 1, {r: -x for r, x in rest.items()})) * bracket
           * integ(low + 1) * subst(make_eliminant(low + 1, rest)))
    return lhs, rhs, n


def _permutation(s: Sampler, n: int):
    perm = list(range(1, n + 1))
    s.rng.shuffle(perm)
    i = s.rng.randint(1, n)
    tau = subst(make_permutation(perm))
    return tau * integ(i), integ(perm[i - 1]) * tau, n


def _evaluation_commutes(s: Sampler, n: int):
    n = max(n, 2)
    i, j = s.rng.sample(range(1, n + 1), 2)
    e = subst(make_evaluation(j))
    return integ(i) * e, e * integ(i), n


def _evaluation_kills(s: Sampler, n: int):
    i = s.rng.randint(1, n)
    return subst(make_evaluation(i)) * integ(i), OperatorExpr(), n


def _rota_baxter(s: Sampler, n: int):
    """``A_i`` is a weight-zero Rota-Baxter operator on the whole hierarchy."""
    i = s.rng.randint(1, n)
    u = s.function(n)

    def lhs(f):
        return integrate_axis(i, u) * integrate_axis(i, f)

    def rhs(f):
        return (integrate_axis(i, u * integrate_axis(i, f))
                + integrate_axis(i, integrate_axis(i, u) * f))
    return lhs, rhs, n


def _contravariance(s: Sampler, n: int):
    m1, m2 = s.matrix(n), s.matrix(n)
    return (lambda f: substitute(compose(m1, m2), f),
            lambda f: substitute(m2, substitute(m1, f)), n)


def _straightness(s: Sampler, n: int):
    m = s.dense(n + 1)
    return (lambda f: substitute(m, f), lambda f: substitute(cutoff(m, n), f), n)


HIERARCHY_AXIOMS: dict[str, Callable] = {
    "scaling": _scaling,
    "transvection": _transvection,
    "transvection_general": _transvection_general,
    "vertical": _vertical,
    "vertical_with_coefficient": _vertical_slack,
    "vertical_multi": _vertical_alt,
    "permutation": _permutation,
    "evaluation_commutes": _evaluation_commutes,
    "evaluation_kills": _evaluation_kills,
    "rota_baxter": _rota_baxter,
    "contravariance": _contravariance,
    "straightness": _straightness,
}


def check_hierarchy_axioms(cfg: TrialConfig = TrialConfig(), functions: int = 5,
                           names=None) -> list[CheckResult]:
    out = []
    for name in names or HIERARCHY_AXIOMS:
        make = HIERARCHY_AXIOMS[name]
        result = CheckResult(name)
        for t in range(cfg.trials):
            s = Sampler(cfg, cfg.rng("axiom", name, t))
            n = s.rng.randint(1, cfg.max_vars)
            lhs, rhs, n = make(s, n)
            fs = [s.function(n) for _ in range(functions)]
            detail = _agree(lhs, rhs, fs)
            label = render_operator(lhs) if isinstance(lhs, OperatorExpr) else name
            result.record(detail is None, f"{label}: {detail}")
        out.append(result)
    return out


# -- coefficient algebra -----------------------------------------------------

def basis_grid(k_max: int = 5, alphas=DEFAULT_ALPHAS) -> list[Basis]:
    return [Basis(k, Fraction(a)) for a in alphas for k in range(k_max + 1)]


def _c(b: Basis) -> Coefficient:
    return Coefficient({b: ONE})


def check_bialgebra_axioms(k_max: int = 5, alphas=DEFAULT_ALPHAS,
                           scalars=DEFAULT_ALPHAS) -> list[CheckResult]:
    grid = basis_grid(k_max, alphas)
    res = {name: CheckResult(name) for name in (
        "rota_baxter", "coassociativity", "counit", "coproduct_multiplicative",
        "scaling_composition", "scaling_convolution", "antipode", "diagonal",
        "horizontal", "fundamental_theorem")}
    delta = B.coproduct_basis
    for b in grid:
        f = _c(b)
        d = B.coproduct(f)
        res["coassociativity"].record(d.map_slot(0, delta) == d.map_slot(1, delta), str(b))
        left = d.map_slot(0, B.counit_tensor).contract()
        right = d.map_slot(1, B.counit_tensor).contract()
        res["counit"].record(left == f and right == f, str(b))
        hopf = d.map_slot(1, as_map(B.antipode)).contract()
        res["antipode"].record(hopf == B.evaluation(f), str(b))
        integral = B.integrate(f)
        lhs = B.coproduct(integral)
        rhs = (d.map_slot(0, as_map(B.integrate))
               + B.coproduct(integral).map_slot(0, as_map(B.evaluation)))
        res["horizontal"].record(lhs == rhs, str(b))
        res["fundamental_theorem"].record(
            B.derivative(integral) == f and B.counit(integral) == 0
            and B.integrate(B.derivative(f)) == f - B.evaluation(f), str(b))
        for lam in scalars:
            lam = Fraction(lam)
            if lam:
                ok = B.integrate(B.scale_arg(lam, f)) == B.scale_arg(lam, integral) * (1 / lam)
                res["diagonal"].record(ok, f"{b}, lam={lam}")
            for mu in scalars:
                mu = Fraction(mu)
                comp = B.scale_arg(lam, B.scale_arg(mu, f)) == B.scale_arg(lam * mu, f)
                res["scaling_composition"].record(comp, f"{b}, {lam}, {mu}")
                conv = B.convolve_scalings(lam, mu, f) == B.scale_arg(lam + mu, f)
                res["scaling_convolution"].record(conv, f"{b}, {lam}, {mu}")
        for b2 in grid:
            g = _c(b2)
            res["rota_baxter"].record(B.rota_baxter_holds(f, g), f"{b}, {b2}")
            prod = B.coproduct(f * g)
            d2 = B.coproduct(g)
            expect = Tensor(2, {})
            for (x1, y1), c1 in d.terms.items():
                for (x2, y2), c2 in d2.terms.items():
                    expect = expect + Tensor(2, {(x1.times(x2), y1.times(y2)): c1 * c2})
            res["coproduct_multiplicative"].record(prod == expect, f"{b}, {b2}")
    return list(res.values())


def check_integral_powers(i_max: int = 6) -> CheckResult:
    """``P(1)^i = i! P^i(1)``."""
    result = CheckResult("integral_powers")
    one = Coefficient.constant(1)
    p1 = B.integrate(one)
    power = one
    iterated = one
    for i in range(1, i_max + 1):
        power = power * p1
        iterated = B.integrate(iterated)
        result.record(power == iterated * factorial(i), f"i = {i}")
    return result


# -- worked identities -------------------------------------------------------

def worked_identities() -> list[CheckResult]:
    out = []
    x = Coefficient.monomial(1)
    r = CheckResult("integral_of_one")
    r.record(apply(integ(1), HierarchyElement.constant(1)) == HierarchyElement.variable(1))
    out.append(r)

    r = CheckResult("transvection_square")
    x1, x2 = HierarchyElement.variable(1), HierarchyElement.variable(2)
    got = apply(subst(make_transvection(1, {2: 1})), x1 * x1)
    r.record(got == x1 * x1 + 2 * x1 * x2 + x2 * x2)
    out.append(r)

    r = CheckResult("duhamel_square")
    r.record(duhamel_convolve(x, x) == Coefficient.monomial(3, 0, Fraction(1, 6)))
    out.append(r)

    r = CheckResult("integral_x_exp")
    xe = Coefficient.monomial(1, 1)
    got = B.integrate(xe)
    expect = xe - Coefficient.monomial(0, 1) + 1
    r.record(got == expect and B.derivative(got) == xe)
    out.append(r)
    return out


# -- normalisation -----------------------------------------------------------

@dataclass
class NormalizationResult:
    sound: CheckResult
    shape: CheckResult
    idempotent: CheckResult
    measure: CheckResult
    budget: CheckResult
    max_steps: int = 0

    def all(self) -> list[CheckResult]:
        return [self.sound, self.shape, self.idempotent, self.measure, self.budget]


def check_normalization(cfg: TrialConfig = TrialConfig(trials=500)) -> NormalizationResult:
    res = NormalizationResult(*(CheckResult(n) for n in (
        "normalization_sound", "normal_form_shape", "normalization_idempotent",
        "measure_decreases", "budget_respected")))
    from ..opring.normal import Reducer
    for t in range(cfg.trials):
        s = Sampler(cfg, cfg.rng("normalize", t))
        word = s.word()
        label = render_operator(word)
        reducer = Reducer("leftmost", cfg.budget, seed=t)
        try:
            nf = reducer.normalize(word)
        except MeasureViolation as err:
            res.measure.record(False, f"{label}: {err}")
            continue
        except BudgetExhausted as err:
            res.budget.record(False, f"{label}: {err}")
            continue
        res.max_steps = max(res.max_steps, reducer.steps)
        res.measure.record(True)
        res.budget.record(True)
        detail = _agree(word, nf, [s.function() for _ in range(cfg.functions)])
        res.sound.record(detail is None, f"{label}: {detail}")
        res.shape.record(is_normal_form(nf), label)
        res.idempotent.record(normalize(nf, cfg.budget) == nf, label)
    return res
