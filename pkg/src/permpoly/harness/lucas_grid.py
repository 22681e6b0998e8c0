"""Lucas suite: digit-wise multinomials against Pascal accumulation."""

import random

import numpy as np

from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.lucas import (
    multinomial_mod_p,
    multinomial_mod_p_dp,
    multinomial_mod_p_grid,
    multinomial_nonzero_mod2,
    pascal_mod_p,
)
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings

PRIMES = (2, 3, 5)
OBSERVATION_MAX_T = 10

# Carry-free compositions quoted as worked examples
KNOWN_NONZERO = ((509, (16, 224, 269)), (2044, (32, 704, 1308)))


def compositions(k: int) -> tuple[np.ndarray, np.ndarray]:
    """All (u, v) with u + v <= k, as two flat arrays."""
    idx = np.arange(k + 1, dtype=np.int64)
    u, v = np.meshgrid(idx, idx, indexing="ij")
    mask = u + v <= k
    return u[mask], v[mask]


def _grid_case(cell: tuple[int, int]) -> ReportCase:
    p, max_k = cell
    pascal = pascal_mod_p(max_k, p)
    checked = 0
    for k in range(max_k + 1):
        u, v = compositions(k)
        lucas = multinomial_mod_p_grid(k, u, v, p)
        dp = pascal[k, u] * pascal[k - u, v] % p
        checked += u.size
        bad = np.flatnonzero(lucas != dp)
        if bad.size:
            j = int(bad[0])
            return ReportCase(
                input={"check": "grid", "p": p, "max_k": max_k},
                agree=False,
                note=f"k={k} parts=({int(u[j])}, {int(v[j])}, {k - int(u[j]) - int(v[j])})",
            )
    return ReportCase(input={"check": "grid", "p": p, "max_k": max_k}, note=f"{checked} compositions")


def _scalar_case(cell: tuple[int, int, int]) -> ReportCase:
    p, max_k, samples = cell
    rng = random.Random(get_settings().seed + p)
    for k in range(max_k + 1):
        for _ in range(samples):
            u = rng.randint(0, k)
            v = rng.randint(0, k - u)
            parts = [u, v, k - u - v]
            value = multinomial_mod_p(k, parts, p)
            ok = value == multinomial_mod_p_dp(k, parts, p)
            if p == 2:
                ok = ok and multinomial_nonzero_mod2(k, parts) == (value != 0)
            if not ok:
                return ReportCase(input={"check": "scalar", "p": p, "max_k": max_k}, agree=False, note=f"k={k} {parts}")
    return ReportCase(input={"check": "scalar", "p": p, "max_k": max_k}, note=f"{samples} samples per k")


def _carry_free(k: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    w = k - u - v
    return ((u & v) | (u & w) | (v & w)) == 0


def _observation_cases(t: int) -> list[ReportCase]:
    """Low bits of 2^t - 3 (...01) and 2^t - 4 (...00) forbid parts with those bits set."""
    cases = []
    for k, forbidden in (((1 << t) - 3, (2, 3)), ((1 << t) - 4, (1, 2, 3))):
        u, v = compositions(k)
        w = k - u - v
        touches = np.isin(u % 4, forbidden) | np.isin(v % 4, forbidden) | np.isin(w % 4, forbidden)
        violations = int(np.count_nonzero(touches & _carry_free(k, u, v)))
        cases.append(
            ReportCase(
                input={"check": "low-bits", "t": t, "k": k},
                agree=violations == 0,
                note=f"{violations} carry-free compositions with a forbidden residue" if violations else None,
            )
        )
    return cases


@register_suite
class LucasSuite(Suite):
    """Lucas multinomials."""

    name = "lucas"
    description = "Vectorised and scalar Lucas multinomials vs Pascal oracle, low-bit observations"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """Run the grid, scalar sample, observation and worked-example checks."""
        samples = get_settings().samples
        builder = ReportBuilder(self.name, params={"max_k": bounds.max_k, "primes": list(PRIMES)})
        builder.extend(map_cases(_grid_case, [(p, bounds.max_k) for p in PRIMES], workers))
        builder.extend(map_cases(_scalar_case, [(p, bounds.max_k, samples) for p in PRIMES], workers))
        for cases in map_cases(_observation_cases, range(2, OBSERVATION_MAX_T + 1), workers):
            builder.extend(cases)
        for k, parts in KNOWN_NONZERO:
            holds = multinomial_mod_p(k, list(parts), 2) == 1 and multinomial_nonzero_mod2(k, list(parts))
            builder.check({"check": "known-nonzero", "k": k, "parts": list(parts)}, holds)
        return builder.build()
