"""Tester agreement suite: brute force, Hermite-Dickson and the cyclotomic criteria."""

import random

from permpoly.classify import TrinomialParams, classify_trinomial_canonical
from permpoly.fieldcore import FieldSpec, make_field, prime_factors
from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.permtest import (
    WanLidlInstance,
    conditions_b_and_c,
    cyclotomic_poly,
    get_tester,
    is_pp_brute,
    is_pp_hermite,
    is_pp_monomial,
    roots_of_unity_check,
    verify_witness,
    wan_lidl,
)
from permpoly.polyring import SparsePoly, format_poly, monomial
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings

MIN_DEGREE = 3
CYCLOTOMIC_DEGREES = (4, 6, 8)
CYCLOTOMIC_RS = (1, 2, 3)
CYCLOTOMIC_INNER_SAMPLES = 16
MONOMIAL_MAX_DEGREE = 8


def random_trinomial(spec: FieldSpec, rng: random.Random) -> SparsePoly:
    """Three distinct exponents in 1..q-2 with random nonzero coefficients."""
    exponents = rng.sample(range(1, spec.q - 1), 3)
    return SparsePoly.from_terms({e: rng.randrange(1, spec.q) for e in exponents}, spec)


def _divisors(k: int) -> list[int]:
    divisors = {1}
    for p in prime_factors(k):
        divisors |= {d * p for d in divisors if k % (d * p) == 0}
    return sorted(divisors)


def _agreement_case(p: SparsePoly, input: dict[str, object]) -> ReportCase:
    """Brute force vs Hermite-Dickson (both k ranges) with witnesses re-checked."""
    brute = is_pp_brute(p)
    hermite = is_pp_hermite(p)
    odd_only = is_pp_hermite(p, skip_char_multiples=True)
    witnesses_ok = verify_witness(brute, p) and verify_witness(hermite, p)
    verdicts = {"brute": brute.is_pp, "hermite": hermite.is_pp, "hermite-odd": odd_only.is_pp}
    return ReportCase(
        input=input,
        oracle_verdicts=verdicts,
        agree=len(set(verdicts.values())) == 1 and witnesses_ok,
        note=None if witnesses_ok else "witness does not reproduce",
    )


def _random_cases(cell: tuple[int, int]) -> list[ReportCase]:
    n, count = cell
    spec = make_field(n)
    rng = random.Random(get_settings().seed + n)
    cases = []
    for i in range(count):
        p = random_trinomial(spec, rng)
        cases.append(_agreement_case(p, {"family": "random", "n": n, "index": i, "poly": format_poly(p)}))
    return cases


def _family_cases(cell: tuple[int, int]) -> list[ReportCase]:
    """The studied trinomials, with the canonical classifier as a third opinion."""
    s, t = cell
    spec = make_field(t)
    cases = []
    for alpha in sorted({0, 1, spec.gamma}):
        params = TrinomialParams(s=s, t=t, alpha=alpha, field=spec)
        case = _agreement_case(params.poly(), {"family": "trinomial", "s": s, "t": t, "alpha": spec.format(alpha)})
        classifier = classify_trinomial_canonical(params).is_pp
        cases.append(
            case.model_copy(
                update={
                    "classifier_verdict": classifier,
                    "agree": case.agree and classifier == case.oracle_positive,
                }
            )
        )
    return cases


def _cyclotomic_cases(n: int) -> list[ReportCase]:
    spec = make_field(n)
    rng = random.Random(get_settings().seed + 7 * n)
    if spec.q <= CYCLOTOMIC_INNER_SAMPLES:
        inner_values = list(spec.elements())
    else:
        inner_values = [0, 1, *sorted(rng.sample(range(2, spec.q), CYCLOTOMIC_INNER_SAMPLES - 2))]
    roots_tester = get_tester("roots-of-unity")
    cases = []
    for d in _divisors(spec.order):
        for r in CYCLOTOMIC_RS:
            for a in inner_values:
                inst = WanLidlInstance(r=r, d=d, f=SparsePoly.from_terms({1: 1, 0: a}, spec))
                g = cyclotomic_poly(inst)
                criterion = wan_lidl(inst)
                roots = roots_tester(d=d, r=r, inner=inst.f).check(g, spec)
                verdicts = {
                    "wanlidl": criterion.is_pp,
                    "brute": is_pp_brute(g).is_pp,
                    "hermite": is_pp_hermite(g).is_pp,
                    "roots-of-unity": roots.is_pp,
                }
                unity_ok = roots_of_unity_check(inst) == conditions_b_and_c(inst)
                witnesses_ok = verify_witness(criterion, None, spec, instance=inst) and verify_witness(
                    roots, None, spec, instance=inst
                )
                cases.append(
                    ReportCase(
                        input={"family": "cyclotomic", "n": n, "d": d, "r": r, "a": spec.format(a)},
                        oracle_verdicts=verdicts,
                        agree=len(set(verdicts.values())) == 1 and unity_ok and witnesses_ok,
                    )
                )
    return cases


def _monomial_case(n: int) -> ReportCase:
    spec = make_field(n)
    bad = next(
        (e for e in range(1, spec.q) if is_pp_brute(monomial(e, 1, spec)).is_pp != is_pp_monomial(e, spec.q)),
        None,
    )
    return ReportCase(
        input={"family": "monomial", "n": n},
        agree=bad is None,
        note=None if bad is None else f"e={bad}",
    )


@register_suite
class PermTestersSuite(Suite):
    """Permutation tester cross-checks."""

    name = "permtesters"
    description = "Brute vs Hermite on random and studied trinomials, Wan-Lidl vs brute, monomial law"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """Run every agreement family."""
        top = min(bounds.tester_max_degree, get_settings().hermite_max_degree)
        builder = ReportBuilder(
            self.name,
            params={"tester_max_degree": top, "random_polys": bounds.random_polys},
        )
        random_grid = [(n, bounds.random_polys) for n in range(MIN_DEGREE, top + 1)]
        for cases in map_cases(_random_cases, random_grid, workers):
            builder.extend(cases)

        family = [(s, t) for t in range(1, top + 1) for s in range(1, t + 1)]
        for cases in map_cases(_family_cases, family, workers):
            builder.extend(cases)

        degrees = [n for n in CYCLOTOMIC_DEGREES if n <= top]
        for cases in map_cases(_cyclotomic_cases, degrees, workers):
            builder.extend(cases)

        builder.extend(map_cases(_monomial_case, range(1, min(top, MONOMIAL_MAX_DEGREE) + 1), workers))
        return builder.build()
