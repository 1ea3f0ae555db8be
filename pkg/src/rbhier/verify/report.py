"""Assembly of JSON verification reports and the matching exit codes."""
from __future__ import annotations

from ..jsonio import schema_tag
from . import checks
from .probe import ProbeReport
from .sampling import TrialConfig

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DISAGREE = 2

SUITES = ("rules", "axioms", "bialgebra", "normalization", "worked")


def run_suites(suites, cfg: TrialConfig) -> list[checks.CheckResult]:
    results: list[checks.CheckResult] = []
    for suite in suites:
        if suite == "rules":
            results += checks.check_rules(cfg)
        elif suite == "axioms":
            results += checks.check_hierarchy_axioms(cfg)
        elif suite == "bialgebra":
            results += checks.check_bialgebra_axioms(5, cfg.alpha_pool)
            results.append(checks.check_integral_powers())
        elif suite == "normalization":
            results += checks.check_normalization(cfg).all()
        elif suite == "worked":
            results += checks.worked_identities()
        else:
            raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    return results


def verify_report(results, cfg: TrialConfig) -> dict:
    passed = sum(r.passed for r in results)
    return {
        "schema": schema_tag("report"),
        "config": cfg.to_json(),
        "results": [r.to_json() for r in results],
        "summary": {"pass": passed, "fail": len(results) - passed, "agree_rate": None},
    }


def probe_report(report: ProbeReport) -> dict:
    doc = report.to_json()
    summary = doc.pop("summary")
    n = summary["trials"]
    doc["schema"] = schema_tag("report")
    doc["results"] = [{"name": "confluence", "passed": report.all_agree, "trials": n,
                       "failed": summary["disagree"], "failures": []}]
    doc["summary"] = {"pass": summary["agree"], "fail": summary["disagree"],
                      "agree_rate": summary["agree_rate"],
                      "semantic_agree": summary["semantic_agree"],
                      "budget_hits": summary["budget_hits"]}
    return doc


def exit_code(doc: dict) -> int:
    """0 all pass, 1 a failed check, 2 syntactically different normal forms only.

    Normal forms that act differently on some function would mean a rule is
    unsound, and a budget hit would contradict termination, so the probe
    reports both as failures rather than as disagreement.
    """
    summary = doc["summary"]
    if summary["agree_rate"] is None:
        return EXIT_OK if summary["fail"] == 0 else EXIT_FAILURE
    if summary["semantic_agree"] < summary["pass"] + summary["fail"] or summary.get("budget_hits"):
        return EXIT_FAILURE
    return EXIT_OK if summary["fail"] == 0 else EXIT_DISAGREE
