"""Enumeration, audit and verification suites for permpoly."""

from permpoly.harness.audit import audit_literal
from permpoly.harness.base import Suite
from permpoly.harness.binomials import binomial_verdict, corollary_count, enumerate_binomials, resolve_oracle
from permpoly.harness.registry import get_suite, list_suites, register_suite
from permpoly.harness.runner import ReportBuilder, map_cases, verify_suite
from permpoly.harness.trith import verify_trith

__all__ = [
    "ReportBuilder",
    "Suite",
    "audit_literal",
    "binomial_verdict",
    "corollary_count",
    "enumerate_binomials",
    "get_suite",
    "list_suites",
    "map_cases",
    "register_suite",
    "resolve_oracle",
    "verify_suite",
    "verify_trith",
]
