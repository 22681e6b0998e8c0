"""Trinomial grid: canonical classifier against exhaustive evaluation."""

from permpoly.classify import TrinomialParams, classify_trinomial_canonical
from permpoly.errors import ResourceGuardError
from permpoly.fieldcore import make_field
from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases, resolve_workers
from permpoly.permtest import is_pp_brute
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings


def trinomial_case(s: int, t: int, alpha: int) -> ReportCase:
    """Canonical classifier vs brute force for one trinomial."""
    params = TrinomialParams(s=s, t=t, alpha=alpha)
    decision = classify_trinomial_canonical(params)
    truth = is_pp_brute(params.poly()).is_pp
    return ReportCase(
        input={"s": s, "t": t, "alpha": params.spec.format(alpha)},
        classifier_verdict=decision.is_pp,
        oracle_verdicts={"brute": truth},
        agree=decision.is_pp == truth,
    )


def verify_trith(s_max: int, t_max: int, workers: int | None = None) -> Report:
    """Check every (s, t, alpha) with s <= s_max, t <= t_max.

    Raises:
        ResourceGuardError: If t_max exceeds trith_max_t
    """
    limit = get_settings().trith_max_t
    if t_max > limit:
        raise ResourceGuardError(f"Trinomial grid refused for t_max = {t_max} > {limit}")

    grid = [
        (s, t, alpha)
        for t in range(1, t_max + 1)
        for s in range(1, s_max + 1)
        for alpha in make_field(t).elements()
    ]
    builder = ReportBuilder("trith", params={"s_max": s_max, "t_max": t_max}, oracle="brute")
    builder.extend(map_cases(lambda cell: trinomial_case(*cell), grid, resolve_workers(workers)))
    return builder.build()


@register_suite
class TrithSuite(Suite):
    """Trinomial theorem grid."""

    name = "trith"
    description = "Canonical trinomial classifier vs brute force over the (s, t, alpha) grid"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """Run verify_trith with s_max = t_max = max_t."""
        return verify_trith(bounds.max_t, bounds.max_t, workers=workers)
