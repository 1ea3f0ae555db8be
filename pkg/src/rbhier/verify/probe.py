"""Randomised comparison of normal forms reached under different strategies.

Each trial normalises one random word under every configured strategy and
compares SHA-256 digests of the canonical normal-form JSON.  Syntactic
disagreement is recorded as data; the trial additionally checks with the
action oracle whether the differing normal forms still act identically
("semantic" agreement).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..jsonio import dumps, normal_form_to_json
from ..opring.normal import BudgetExhausted, Reducer
from ..opring.words import OperatorExpr
from ..syntax import render_operator
from .oracle import apply
from .sampling import Sampler, TrialConfig


def digest(nf: OperatorExpr) -> str:
    return hashlib.sha256(dumps(normal_form_to_json(nf)).encode()).hexdigest()


@dataclass
class ProbeTrial:
    index: int
    word: str
    digests: dict
    agree: bool
    semantic_agree: bool
    normal_forms: dict = field(default_factory=dict)
    budget_hit: bool = False
    steps: int = 0

    def to_json(self, full: bool = False) -> dict:
        d = {"index": self.index, "word": self.word, "digests": dict(self.digests),
             "agree": self.agree, "semantic_agree": self.semantic_agree,
             "budget_hit": self.budget_hit, "steps": self.steps}
        if full:
            d["normal_forms"] = dict(self.normal_forms)
        return d


@dataclass
class ProbeReport:
    config: TrialConfig
    trials: list = field(default_factory=list)

    @property
    def agreed(self) -> int:
        return sum(t.agree for t in self.trials)

    @property
    def semantically_agreed(self) -> int:
        return sum(t.semantic_agree for t in self.trials)

    @property
    def disagreements(self) -> list:
        return [t for t in self.trials if not t.agree]

    @property
    def budget_hits(self) -> int:
        return sum(t.budget_hit for t in self.trials)

    @property
    def agree_rate(self) -> float:
        return self.agreed / len(self.trials) if self.trials else 1.0

    @property
    def all_agree(self) -> bool:
        return self.agreed == len(self.trials)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "trials": [t.to_json() for t in self.trials],
            "disagreements": [t.to_json(full=True) for t in self.disagreements],
            "summary": {"trials": len(self.trials), "agree": self.agreed,
                        "disagree": len(self.trials) - self.agreed,
                        "semantic_agree": self.semantically_agreed,
                        "budget_hits": self.budget_hits, "agree_rate": self.agree_rate},
        }


def probe_word(index: int, word: OperatorExpr, cfg: TrialConfig, sampler: Sampler) -> ProbeTrial:
    forms = {}
    budget_hit = False
    steps = 0
    for strategy in cfg.strategies:
        reducer = Reducer(strategy, cfg.budget, seed=f"{cfg.seed}/{index}")
        try:
            forms[strategy] = reducer.normalize(word)
        except BudgetExhausted as err:
            forms[strategy] = err.partial
            budget_hit = True
            steps = max(steps, err.steps)
        steps = max(steps, reducer.steps)
    digests = {s: digest(nf) for s, nf in forms.items()}
    agree = len(set(digests.values())) == 1
    semantic = agree
    if not agree:
        fs = [sampler.function() for _ in range(cfg.functions)]
        # shared terms cancel in the difference, so only the residue is applied
        first, *rest = forms.values()
        semantic = all(not apply(first - nf, f).terms for nf in rest for f in fs)
    return ProbeTrial(index, render_operator(word), digests, agree, semantic,
                      {s: render_operator(nf) for s, nf in forms.items()}, budget_hit, steps)


def probe_confluence(cfg: TrialConfig = TrialConfig(trials=1000)) -> ProbeReport:
    if len(cfg.strategies) < 2:
        raise ValueError("the confluence probe needs at least two strategies")
    report = ProbeReport(cfg)
    for t in range(cfg.trials):
        s = Sampler(cfg, cfg.rng("probe", t))
        report.trials.append(probe_word(t, s.word(), cfg, s))
    return report
