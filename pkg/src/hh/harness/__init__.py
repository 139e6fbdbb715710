"""Verification suites, floating-point oracles, report writers and the command-line entry point."""

from hh.harness.config import ConfigError, NotApplicable, SuiteConfig
from hh.harness.report import CheckRecord, SuiteReport
from hh.harness.suites import SUITES, check_feasible, run_suite

__all__ = [
    "CheckRecord",
    "ConfigError",
    "NotApplicable",
    "SUITES",
    "SuiteConfig",
    "SuiteReport",
    "check_feasible",
    "run_suite",
]
