"""Findings report: where the literal and canonical classifiers part ways."""

import structlog

from permpoly.classify import (
    BinomialParams,
    TrinomialParams,
    classify_binomial,
    classify_trinomial_canonical,
    classify_trinomial_literal,
)
from permpoly.fieldcore import make_field
from permpoly.harness.binomials import binomial_truth, resolve_oracle
from permpoly.harness.runner import ReportBuilder, map_cases, resolve_workers
from permpoly.permtest import is_pp_brute
from permpoly.schemas import ClassifierMode, Report, ReportCase
from permpoly.settings import get_settings

logger = structlog.get_logger()


def _trinomial_findings(s: int, t: int) -> list[ReportCase]:
    spec = make_field(t)
    cases = []
    for alpha in spec.elements():
        params = TrinomialParams(s=s, t=t, alpha=alpha, field=spec)
        literal = classify_trinomial_literal(params)
        canonical = classify_trinomial_canonical(params)
        if literal.is_pp == canonical.is_pp:
            continue
        truth = is_pp_brute(params.poly()).is_pp
        cases.append(
            ReportCase(
                input={"family": "trinomial", "s": s, "t": t, "alpha": spec.format(alpha)},
                classifier_verdict=canonical.is_pp,
                oracle_verdicts={"brute": truth, "literal": literal.is_pp},
                agree=canonical.is_pp == truth,
                note=f"literal fails {literal.failed_condition}" if literal.failed_condition else "literal accepts",
            )
        )
    return cases


def _binomial_findings(s: int, t: int) -> list[ReportCase]:
    small = make_field(2 * t)
    cases = []
    for a in range(1, small.q):
        params = BinomialParams(s=s, t=t, a=a, field=small)
        literal = classify_binomial(params, ClassifierMode.LITERAL)
        canonical = classify_binomial(params, ClassifierMode.CANONICAL)
        if literal.is_pp == canonical.is_pp:
            continue
        oracle = resolve_oracle("auto", params.n)
        truth = binomial_truth(params, oracle)
        cases.append(
            ReportCase(
                input={"family": "binomial", "s": s, "t": t, "a": small.format(a)},
                classifier_verdict=canonical.is_pp,
                oracle_verdicts={oracle.value: truth, "literal": literal.is_pp},
                agree=canonical.is_pp == truth,
                note=f"literal fails {literal.failed_condition}" if literal.failed_condition else "literal accepts",
            )
        )
    return cases


def audit_literal(s_max: int, t_max: int, workers: int | None = None) -> Report:
    """List every input where the literal theorem statement and the canonical classifier differ.

    Each finding carries the ground truth; agree records whether the canonical verdict
    matches it. The report is informational and never counts as a failure by itself.

    Args:
        s_max: Largest s
        t_max: Largest t for trinomials (binomials stop at audit_binomial_max_t)
        workers: Worker pool size

    Returns:
        Report of findings
    """
    binomial_t_max = min(t_max, get_settings().audit_binomial_max_t)
    cells = [("trinomial", s, t) for t in range(1, t_max + 1) for s in range(1, s_max + 1)]
    cells += [("binomial", s, t) for t in range(1, binomial_t_max + 1) for s in range(1, s_max + 1)]

    def run(cell: tuple[str, int, int]) -> list[ReportCase]:
        family, s, t = cell
        return _trinomial_findings(s, t) if family == "trinomial" else _binomial_findings(s, t)

    builder = ReportBuilder(
        "audit",
        params={"s_max": s_max, "t_max": t_max, "binomial_t_max": binomial_t_max},
    )
    for findings in map_cases(run, cells, resolve_workers(workers)):
        for case in findings:
            logger.info("Convention finding", **case.input, truth=case.oracle_positive)
            builder.add(case)
    return builder.build()
