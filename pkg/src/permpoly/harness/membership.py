"""Membership suite: the four formulations of the condition on a."""

from permpoly.classify import membership_conditions_agree
from permpoly.fieldcore import make_field, subfield_view
from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings


def membership_cases(t: int) -> list[ReportCase]:
    """Agreement over every a in F_{2^{2t}}*, and the size of the satisfying set."""
    spec = make_field(2 * t)
    tview = subfield_view(spec, t)
    disagreeing = []
    satisfying = []
    for a in range(1, spec.q):
        check = membership_conditions_agree(a, t, spec)
        if not check.agree:
            disagreeing.append(spec.format(a))
        if check.verdict:
            satisfying.append(a)

    expected = 2 * ((1 << t) - 1) if t % 2 else 0
    inside = sum(1 for a in satisfying if tview.contains(a))
    return [
        ReportCase(
            input={"check": "four-way", "t": t},
            agree=not disagreeing,
            note=f"first disagreement at a={disagreeing[0]}" if disagreeing else None,
        ),
        ReportCase(
            input={"check": "count", "t": t},
            agree=len(satisfying) == expected and inside == 0,
            note=f"{len(satisfying)} satisfying, predicted {expected}, {inside} in F_2^{t}",
        ),
    ]


@register_suite
class MembershipSuite(Suite):
    """Equivalent conditions on a."""

    name = "membership"
    description = "Alpha, polynomial, root and coset conditions agree on all of F_2^(2t)*; satisfying-set size"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """One agreement case and one count case per t."""
        top = min(bounds.max_t, get_settings().reduction_exhaustive_max_t)
        builder = ReportBuilder(self.name, params={"max_t": top})
        for cases in map_cases(membership_cases, range(1, top + 1), workers):
            builder.extend(cases)
        return builder.build()
