"""Case execution and report aggregation shared by every suite."""

import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

import structlog

from permpoly.schemas import Report, ReportCase, ReportSummary
from permpoly.settings import ProfileBounds, get_settings

logger = structlog.get_logger()

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: int | None) -> int:
    """Explicit worker count, else the configured or machine default."""
    return workers if workers and workers > 0 else get_settings().resolved_workers()


def map_cases(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Apply fn to every item, in parallel when workers > 1, preserving input order."""
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


class ReportBuilder:
    """Collects cases and derives the summary when the run finishes."""

    def __init__(self, suite: str, params: dict[str, Any] | None = None, oracle: str | None = None) -> None:
        """Initialize builder.

        Args:
            suite: Suite or command name
            params: Echo of the inputs
            oracle: Oracle that supplies ground truth, if any
        """
        self.suite = suite
        self.params = params or {}
        self.oracle = oracle
        self.cases: list[ReportCase] = []
        self._start = time.perf_counter()
        logger.info("Suite started", suite=suite, **self.params)

    def add(self, case: ReportCase) -> None:
        """Record a verdict case."""
        if not case.agree:
            logger.warning("Disagreement", suite=self.suite, input=case.input, note=case.note)
        self.cases.append(case)

    def extend(self, cases: Iterable[ReportCase]) -> None:
        """Record several cases in order."""
        for case in cases:
            self.add(case)

    def check(self, input: dict[str, Any], holds: bool, note: str | None = None) -> None:
        """Record a property check that either holds or is a violation."""
        self.add(ReportCase(input=input, agree=holds, note=note))

    def build(self, expected_pp_count: int | None = None) -> Report:
        """Freeze the cases into a Report."""
        positives = [case.input for case in self.cases if _is_positive(case)]
        disagreements = sum(1 for case in self.cases if not case.agree)
        elapsed_ms = (time.perf_counter() - self._start) * 1000
        summary = ReportSummary(
            total=len(self.cases),
            disagreements=disagreements,
            pp_count=len(positives),
            elapsed_ms=round(elapsed_ms, 3),
            oracle=self.oracle,
            expected_pp_count=expected_pp_count,
            expectation_met=None if expected_pp_count is None else len(positives) == expected_pp_count,
            positives=positives,
        )
        if summary.expectation_met is False:
            logger.warning(
                "PP count differs from prediction",
                suite=self.suite,
                pp_count=summary.pp_count,
                expected=expected_pp_count,
            )
        logger.info(
            "Suite finished",
            suite=self.suite,
            total=summary.total,
            disagreements=disagreements,
            pp_count=summary.pp_count,
            elapsed_ms=summary.elapsed_ms,
        )
        return Report(suite=self.suite, params=self.params, cases=self.cases, summary=summary)


def _is_positive(case: ReportCase) -> bool:
    """Oracle-positive when an oracle ran, else classifier-positive."""
    oracle = case.oracle_positive
    if oracle is not None:
        return oracle
    return bool(case.classifier_verdict)


def verify_suite(name: str, bounds: ProfileBounds | None = None, workers: int | None = None) -> Report:
    """Run a registered suite.

    Args:
        name: Suite name (see list_suites)
        bounds: Grid bounds (default: the configured profile)
        workers: Worker pool size (default: settings)

    Returns:
        The suite's report

    Raises:
        ValueError: If the suite is unknown
    """
    from permpoly.harness.registry import get_suite

    suite_class = get_suite(name)
    bounds = bounds or get_settings().bounds()
    return suite_class().run(bounds, workers=resolve_workers(workers))
