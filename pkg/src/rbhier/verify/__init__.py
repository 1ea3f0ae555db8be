"""Exact action oracle and the randomised verification suites."""
from .checks import (CheckResult, check_bialgebra_axioms, check_hierarchy_axioms,
                     check_integral_powers, check_normalization, check_rule, check_rules,
                     worked_identities)
from .oracle import apply, apply_word
from .probe import ProbeReport, probe_confluence
from .sampling import Sampler, TrialConfig

__all__ = ["apply", "apply_word", "check_rule", "check_rules", "check_hierarchy_axioms",
           "check_bialgebra_axioms", "check_integral_powers", "check_normalization",
           "worked_identities", "probe_confluence", "ProbeReport", "TrialConfig", "Sampler",
           "CheckResult"]
