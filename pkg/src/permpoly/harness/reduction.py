"""Reduction suite: binomial over F_{2^n} vs its trinomial over F_{2^t}."""

import random
from dataclasses import dataclass

from permpoly.classify import BinomialParams, classify_binomial, reduce_binomial, subfield_map_verdict
from permpoly.errors import DegenerateElementError
from permpoly.fieldcore import MAX_DEGREE, FieldElement, make_field, omega, subfield_view
from permpoly.harness.base import Suite
from permpoly.harness.binomials import corollary_count
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.permtest import is_pp_brute, wan_lidl
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings


@dataclass(frozen=True)
class Cell:
    """One (s, t) pair of the grid and the a values it covers."""

    s: int
    t: int
    a_values: tuple[FieldElement, ...]
    exhaustive: bool
    brute: bool

    @property
    def n(self) -> int:
        """2^s * t."""
        return (1 << self.s) * self.t


def sample_a_values(s: int, t: int, samples: int, seed: int) -> tuple[FieldElement, ...]:
    """Deterministic a's in F_{2^{2t}}*: 1, a generator of F_{2^t}*, omega-coset members and random fill."""
    small = make_field(2 * t)
    tview = subfield_view(small, t)
    rng = random.Random(seed + 1000 * s + t)
    chosen = {1, tview.beta}
    units = [y for y in tview.members if y]
    for _ in range(samples // 4):
        chosen.add(small.mul(rng.choice(omega(small)), rng.choice(units)))
    while len(chosen) < min(samples, small.order):
        chosen.add(rng.randrange(1, small.q))
    return tuple(sorted(chosen))


def build_cells(bounds: ProfileBounds) -> list[Cell]:
    """Every (s, t) with n = 2^s * t <= max_n, with its a values and brute-force flag."""
    settings = get_settings()
    cells = []
    top = min(bounds.max_n, MAX_DEGREE)
    for s in range(1, top.bit_length()):
        for t in range(1, top // (1 << s) + 1):
            exhaustive = t <= settings.reduction_exhaustive_max_t
            if exhaustive:
                a_values = tuple(make_field(2 * t).elements())[1:]
            else:
                a_values = sample_a_values(s, t, settings.samples, settings.seed)
            n = (1 << s) * t
            affordable = len(a_values) << n <= settings.reduction_brute_budget
            brute = n <= settings.brute_max_degree and (
                affordable or (exhaustive and n <= settings.reduction_brute_max_n)
            )
            cells.append(Cell(s=s, t=t, a_values=a_values, exhaustive=exhaustive, brute=brute))
    return cells


def reduction_case(job: tuple[Cell, FieldElement]) -> ReportCase:
    """Every available route to the verdict for one binomial, plus the canonical classifier."""
    cell, a = job
    small = make_field(2 * cell.t)
    ambient = make_field(cell.n)
    params = BinomialParams(s=cell.s, t=cell.t, a=a, field=small)
    in_subfield = subfield_view(small, cell.t).contains(a)

    criterion = wan_lidl(params.wan_lidl_instance(ambient))
    verdicts = {"wanlidl": criterion.is_pp}
    if cell.n <= get_settings().brute_max_degree:
        verdicts["subfield-map"] = subfield_map_verdict(params, ambient).is_pp
    if cell.brute:
        verdicts["brute"] = is_pp_brute(params.poly(ambient)).is_pp

    notes = []
    if in_subfield:
        witness = criterion.witness or {}
        if witness.get("condition") != "b":
            notes.append("a in F_2^t without a condition (b) failure")
        try:
            reduce_binomial(params, ambient)
            notes.append("reduction accepted an a in F_2^t")
        except DegenerateElementError:
            pass
    else:
        trinomial, _ = reduce_binomial(params, ambient)
        own, _ = reduce_binomial(params)
        # Embeddings chosen per field pair may differ by a Frobenius power
        conjugates = {trinomial.spec.frobenius(own.alpha, j) for j in range(cell.t)}
        if trinomial.alpha not in conjugates:
            notes.append("alpha is not conjugate across the fields used for the reduction")
        verdicts["reduction"] = is_pp_brute(trinomial.poly()).is_pp

    classifier = classify_binomial(params).is_pp
    consistent = len(set(verdicts.values())) == 1 and classifier == criterion.is_pp
    if in_subfield and criterion.is_pp:
        consistent = False
    return ReportCase(
        input={"s": cell.s, "t": cell.t, "n": cell.n, "a": small.format(a)},
        classifier_verdict=classifier,
        oracle_verdicts=verdicts,
        agree=consistent and not notes,
        note="; ".join(notes) or None,
    )


@register_suite
class ReductionSuite(Suite):
    """Binomial-to-trinomial reduction chain."""

    name = "reduction"
    description = "Wan-Lidl, subfield map, brute force and reduced trinomial agree on every binomial with n <= max_n"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """One case per (s, t, a), then the predicted PP count per exhaustive cell."""
        cells = build_cells(bounds)
        builder = ReportBuilder(self.name, params={"max_n": bounds.max_n}, oracle="wanlidl")
        jobs = [(cell, a) for cell in cells for a in cell.a_values]
        cases = map_cases(reduction_case, jobs, workers)
        builder.extend(cases)

        by_cell: dict[tuple[int, int], int] = {}
        for (cell, _), case in zip(jobs, cases, strict=True):
            key = (cell.s, cell.t)
            by_cell[key] = by_cell.get(key, 0) + bool(case.oracle_positive)
        for cell in cells:
            expected = corollary_count(cell.s, cell.t)
            if not cell.exhaustive or expected is None:
                continue
            found = by_cell.get((cell.s, cell.t), 0)
            builder.check(
                {"check": "pp-count", "s": cell.s, "t": cell.t, "n": cell.n},
                found == expected,
                note=f"{found} PPs, predicted {expected}",
            )
        return builder.build()
