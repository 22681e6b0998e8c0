"""Coefficient engine suite: combinatorial sums, power oracle and closed forms."""

import random

from permpoly.classify import TrinomialParams
from permpoly.fieldcore import FieldElement, make_field
from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.lucas import (
    closed_form_2t3,
    closed_form_2t4,
    exponent_triples,
    possible_ells,
    simplified_2t4,
    sum_condition,
    top_coeff_combinatorial,
)
from permpoly.polyring import iter_powers
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings

CLOSED_FORM_SAMPLES = 32


def power_top_coefficients(s: int, t: int, alpha: FieldElement, ks: set[int]) -> dict[int, FieldElement]:
    """x^(2^t-1) coefficient of f^k for each k in ks, from one incremental powering run."""
    f = TrinomialParams(s=s, t=t, alpha=alpha).poly()
    q = f.field.q
    tops = {0: 0} if 0 in ks else {}
    for k, dense in iter_powers(f, max(ks)):
        if k in ks:
            tops[k] = int(dense[q - 1])
    return tops


def _oracle_equality(cell: tuple[int, int]) -> list[ReportCase]:
    s, t = cell
    ks = ((1 << t) - 3, (1 << t) - 4)
    spec = make_field(t)
    mismatches: dict[int, str] = {}
    for alpha in spec.elements():
        tops = power_top_coefficients(s, t, alpha, set(ks))
        for k in ks:
            if k not in mismatches and top_coeff_combinatorial(s, t, alpha, k) != tops[k]:
                mismatches[k] = spec.format(alpha)
    return [
        ReportCase(
            input={"check": "oracle-equality", "s": s, "t": t, "k": k},
            agree=k not in mismatches,
            note=f"alpha={mismatches[k]}" if k in mismatches else None,
        )
        for k in ks
    ]


def _alphas(s: int, t: int, bounds: ProfileBounds) -> list[FieldElement]:
    spec = make_field(t)
    if t <= bounds.exhaustive_alpha_max_t:
        return list(spec.elements())
    rng = random.Random(get_settings().seed + 1000 * t + s)
    return sorted({rng.randrange(spec.q) for _ in range(CLOSED_FORM_SAMPLES)})


def _nonvanishing(s: int, t: int, alpha: FieldElement) -> bool:
    value = closed_form_2t4(s, t, alpha)
    return value != 0 and value == simplified_2t4(s, t, alpha)


def _closed_forms(cell: tuple[int, int, ProfileBounds]) -> list[ReportCase]:
    s, t, bounds = cell
    k3, k4 = (1 << t) - 3, (1 << t) - 4
    spec = make_field(t)
    alphas = _alphas(s, t, bounds)
    bad3 = next((a for a in alphas if closed_form_2t3(s, t, a) != top_coeff_combinatorial(s, t, a, k3)), None)
    bad4 = next((a for a in alphas if closed_form_2t4(s, t, a) != top_coeff_combinatorial(s, t, a, k4)), None)

    ells_ok = all(triple.ell in possible_ells(s, t, k) for k in (k3, k4) for triple in exponent_triples(s, t, k))

    satisfying = [a for a in spec.elements() if sum_condition(s, t, a)]
    nonvanishing_bad = next((a for a in satisfying if not _nonvanishing(s, t, a)), None)

    def note(bad: FieldElement | None) -> str | None:
        return None if bad is None else f"alpha={spec.format(bad)}"

    return [
        ReportCase(input={"check": "closed-form-2t3", "s": s, "t": t}, agree=bad3 is None, note=note(bad3)),
        ReportCase(input={"check": "closed-form-2t4", "s": s, "t": t}, agree=bad4 is None, note=note(bad4)),
        ReportCase(input={"check": "ell-values", "s": s, "t": t}, agree=ells_ok),
        ReportCase(
            input={"check": "non-vanishing", "s": s, "t": t},
            agree=nonvanishing_bad is None,
            note=note(nonvanishing_bad) or f"{len(satisfying)} alpha satisfy the sum condition",
        ),
    ]


@register_suite
class CoeffsSuite(Suite):
    """Top-coefficient engine."""

    name = "coeffs"
    description = "Combinatorial top coefficient vs powering, closed forms, ell pruning, non-vanishing"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """Run the oracle-equality and closed-form grids."""
        builder = ReportBuilder(
            self.name,
            params={"coeff_max_t": bounds.coeff_max_t, "closed_form_max_t": bounds.closed_form_max_t},
        )
        oracle_grid = [(s, t) for t in range(2, bounds.coeff_max_t + 1) for s in range(1, t)]
        for cases in map_cases(_oracle_equality, oracle_grid, workers):
            builder.extend(cases)

        closed_grid = [(s, t, bounds) for t in range(4, bounds.closed_form_max_t + 1) for s in range(3, t)]
        for cases in map_cases(_closed_forms, closed_grid, workers):
            builder.extend(cases)
        return builder.build()
