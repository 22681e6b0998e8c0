"""Binomial enumeration against a ground-truth oracle."""

import structlog

from permpoly.classify import BinomialParams, classify_binomial, reduce_binomial
from permpoly.errors import DegenerateElementError, ResourceGuardError
from permpoly.fieldcore import MAX_DEGREE, make_field
from permpoly.harness.runner import ReportBuilder, map_cases, resolve_workers
from permpoly.permtest import is_pp_brute, wan_lidl
from permpoly.schemas import Method, OracleName, PermVerdict, Report, ReportCase
from permpoly.settings import get_settings

logger = structlog.get_logger()


def corollary_count(s: int, t: int) -> int | None:
    """Number of a in F_{2^{2t}}* making the binomial a PP, where the theorem predicts one."""
    if t % 2 == 0:
        return 0
    if s in (1, 2):
        return 2 * ((1 << t) - 1)
    return None


def resolve_oracle(oracle: OracleName | str, n: int, candidates: int = 1) -> OracleName:
    """Pick the oracle that will run for a binomial over F_{2^n}.

    auto routes to brute force while the total work (candidates * 2^n) fits the brute
    budget, to Wan-Lidl while F_{2^n} can be built, and to the reduction beyond that.

    Raises:
        ResourceGuardError: If an explicitly requested oracle cannot run at this n
    """
    settings = get_settings()
    chosen = OracleName(oracle)
    if chosen == OracleName.AUTO:
        if n <= settings.brute_max_degree and candidates * (1 << n) <= settings.reduction_brute_budget:
            chosen = OracleName.BRUTE
        elif n <= MAX_DEGREE:
            chosen = OracleName.WANLIDL
        else:
            chosen = OracleName.REDUCTION
        logger.debug("Oracle routed", n=n, candidates=candidates, oracle=chosen.value)
    if chosen == OracleName.BRUTE and n > settings.brute_max_degree:
        raise ResourceGuardError(f"Brute-force oracle refused for n = {n} > {settings.brute_max_degree}")
    if chosen == OracleName.WANLIDL and n > MAX_DEGREE:
        raise ResourceGuardError(f"Wan-Lidl oracle needs F_2^{n}, beyond n = {MAX_DEGREE}")
    return chosen


def binomial_verdict(params: BinomialParams, oracle: OracleName) -> PermVerdict:
    """Verdict for the binomial from a concrete (already resolved) oracle.

    The reduction oracle never builds F_{2^n}: it decides the reduced trinomial over
    F_{2^t} by brute force and reports that witness under "trinomial".
    """
    if oracle == OracleName.BRUTE:
        return is_pp_brute(params.poly(make_field(params.n)))
    if oracle == OracleName.WANLIDL:
        return wan_lidl(params.wan_lidl_instance(make_field(params.n)))
    try:
        trinomial, _ = reduce_binomial(params)
    except DegenerateElementError:
        return PermVerdict(is_pp=False, method=Method.REDUCTION, witness={"kind": "subfield-element", "condition": "b"})
    reduced = is_pp_brute(trinomial.poly())
    witness = None
    if not reduced.is_pp:
        alpha = trinomial.spec.format(trinomial.alpha)
        witness = {"kind": "reduced-trinomial", "alpha": alpha, "trinomial": reduced.witness}
    return PermVerdict(is_pp=reduced.is_pp, method=Method.REDUCTION, witness=witness)


def binomial_truth(params: BinomialParams, oracle: OracleName) -> bool:
    """Ground-truth PP verdict for the binomial from a concrete oracle."""
    return binomial_verdict(params, oracle).is_pp


def enumerate_binomials(
    s: int,
    t: int,
    oracle: OracleName | str = OracleName.AUTO,
    workers: int | None = None,
) -> Report:
    """Classify every a in F_{2^{2t}}* and compare with an oracle.

    Args:
        s: Exponent parameter, n = 2^s * t
        t: Half degree of the field holding a
        oracle: brute, wanlidl, reduction or auto
        workers: Worker pool size

    Returns:
        Report with one case per a and the predicted PP count where one exists

    Raises:
        ResourceGuardError: If the enumeration or the chosen oracle is too large
    """
    settings = get_settings()
    if 2 * t > settings.brute_max_degree:
        raise ResourceGuardError(f"Refusing to enumerate F_2^{2 * t}")
    n = (1 << s) * t
    small = make_field(2 * t)
    chosen = resolve_oracle(oracle, n, candidates=small.order)

    def run(a: int) -> ReportCase:
        params = BinomialParams(s=s, t=t, a=a, field=small)
        decision = classify_binomial(params)
        truth = binomial_truth(params, chosen)
        return ReportCase(
            input={"s": s, "t": t, "a": small.format(a)},
            classifier_verdict=decision.is_pp,
            oracle_verdicts={chosen.value: truth},
            agree=decision.is_pp == truth,
        )

    builder = ReportBuilder("enumerate", params={"s": s, "t": t, "n": n, "oracle": chosen.value}, oracle=chosen.value)
    builder.extend(map_cases(run, range(1, small.q), resolve_workers(workers)))
    return builder.build(expected_pp_count=corollary_count(s, t))
