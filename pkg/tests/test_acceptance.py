"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criterion 6 (termination monitoring) aggregates the measure and budget
bookkeeping of the rule, normalisation and probe runs, so it is checked last.
"""
import json
import time
from pathlib import Path

import jsonschema
import pytest

from rbhier.jsonio import dumps
from rbhier.verify import (TrialConfig, check_bialgebra_axioms, check_hierarchy_axioms,
                           check_integral_powers, check_normalization, check_rule,
                           probe_confluence, worked_identities)
from rbhier.verify.report import EXIT_DISAGREE, EXIT_OK, exit_code, probe_report

REPORT_SCHEMA = json.loads((Path(__file__).resolve().parent.parent / "schemas" /
                            "report.v1.json").read_text())

# measure / budget evidence collected by criteria 4, 5 and 7 for criterion 6
MONITOR: dict = {}


def report(capsys, number, title, ok, elapsed, limit, detail=""):
    verdict = "PASS" if ok and elapsed < limit else "FAIL"
    with capsys.disabled():
        print(f"\n[criterion {number}] {verdict}: {title} ({elapsed:.1f}s, limit {limit}s) {detail}")
    return verdict == "PASS"


def failures(results):
    return {r.name: r.failures for r in results if not r.passed}


def test_criterion_1_bialgebra_axioms(capsys):
    t = time.perf_counter()
    results = check_bialgebra_axioms(k_max=5)
    elapsed = time.perf_counter() - t
    ok = all(r.passed for r in results)
    trials = sum(r.trials for r in results)
    assert report(capsys, 1, "coefficient bialgebra and Rota-Baxter axioms, k <= 5", ok,
                  elapsed, 10, f"{trials} exact checks"), failures(results)


def test_criterion_2_integral_powers(capsys):
    t = time.perf_counter()
    result = check_integral_powers(6)
    elapsed = time.perf_counter() - t
    assert report(capsys, 2, "P(1)^i = i! P^i(1) for i <= 6", result.passed, elapsed, 1)


def test_criterion_3_hierarchy_axioms(capsys):
    cfg = TrialConfig(trials=100, max_vars=4, max_degree=3)
    t = time.perf_counter()
    results = check_hierarchy_axioms(cfg, functions=3)
    elapsed = time.perf_counter() - t
    ok = all(r.passed and r.trials == 100 for r in results)
    assert report(capsys, 3, "hierarchy substitution identities, 100 instances each", ok,
                  elapsed, 120, f"{len(results)} identities"), failures(results)


def test_criterion_4_rule_soundness(capsys):
    cfg = TrialConfig(trials=100, max_vars=4, max_degree=3)
    t = time.perf_counter()
    results = [check_rule(rule, cfg, functions=5) for rule in range(1, 10)]
    elapsed = time.perf_counter() - t
    # check_rule also asserts a strict measure decrease for every instance
    MONITOR["rules"] = all(r.passed for r in results)
    ok = all(r.passed and r.trials == 100 for r in results)
    assert report(capsys, 4, "rewrite rule soundness, 100 oracle trials per rule", ok,
                  elapsed, 300), failures(results)


def test_criterion_5_normalization(capsys):
    cfg = TrialConfig(trials=500, max_word_len=6, functions=3)
    t = time.perf_counter()
    res = check_normalization(cfg)
    elapsed = time.perf_counter() - t
    MONITOR["normalize"] = (res.measure.passed and res.budget.passed, res.max_steps)
    ok = all(r.passed for r in (res.sound, res.shape, res.idempotent)) and res.sound.trials == 500
    assert report(capsys, 5, "normalisation sound, normal-shaped and idempotent on 500 words",
                  ok, elapsed, 600), failures(res.all())


def test_criterion_7_confluence_probe(capsys, tmp_path):
    cfg = TrialConfig(trials=1000, max_word_len=6)
    t = time.perf_counter()
    probe = probe_confluence(cfg)
    elapsed = time.perf_counter() - t
    doc = probe_report(probe)
    out = tmp_path / "probe.json"
    out.write_text(dumps(doc))
    jsonschema.validate(json.loads(out.read_text()), REPORT_SCHEMA)
    summary = doc["summary"]
    MONITOR["probe"] = (summary["budget_hits"] == 0, max(t.steps for t in probe.trials))
    # disagreement is data (exit code 2), but different normal forms must
    # still act identically, otherwise some rule is unsound
    ok = (len(probe.trials) == 1000 and len(cfg.strategies) == 3
          and summary["semantic_agree"] == 1000
          and exit_code(doc) in (EXIT_OK, EXIT_DISAGREE))
    detail = (f"syntactic agreement {summary['agree_rate']:.1%}, "
              f"semantic agreement {summary['semantic_agree']}/1000, exit code {exit_code(doc)}")
    assert report(capsys, 7, "confluence probe report over 1000 words x 3 strategies", ok,
                  elapsed, 1200, detail)


def test_criterion_8_worked_identities(capsys):
    t = time.perf_counter()
    results = worked_identities()
    elapsed = time.perf_counter() - t
    ok = [r.name for r in results] == ["integral_of_one", "transvection_square",
                                       "duhamel_square", "integral_x_exp"] \
        and all(r.passed for r in results)
    assert report(capsys, 8, "worked identities", ok, elapsed, 1)


def test_criterion_6_termination_monitoring(capsys):
    if set(MONITOR) != {"rules", "normalize", "probe"}:
        pytest.skip("needs the runs of criteria 4, 5 and 7 in the same session")
    norm_ok, norm_steps = MONITOR["normalize"]
    probe_ok, probe_steps = MONITOR["probe"]
    ok = MONITOR["rules"] and norm_ok and probe_ok
    detail = f"max steps per word {max(norm_steps, probe_steps)} of 100000"
    assert report(capsys, 6, "every rewrite step decreases the measure, no budget hit", ok,
                  0.0, 1, detail)
