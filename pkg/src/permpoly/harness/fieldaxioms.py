"""Field axiom suite: arithmetic, subfields, decomposition and embeddings."""

import math
from collections.abc import Callable

import numpy as np

from permpoly.fieldcore import (
    FieldSpec,
    clmul,
    decompose,
    embed_field,
    is_irreducible,
    make_field,
    multiplicative_order,
    omega,
    poly_mod,
    subfield_view,
    trace,
)
from permpoly.harness.base import Suite
from permpoly.harness.registry import register_suite
from permpoly.harness.runner import ReportBuilder, map_cases
from permpoly.schemas import Report, ReportCase
from permpoly.settings import ProfileBounds, get_settings

EXHAUSTIVE_PAIRS_MAX_Q = 256
PAIR_SAMPLES = 4096
DECOMPOSE_MAX_DEGREE = 12

Check = Callable[[FieldSpec, np.random.Generator], bool]


def _pairs(spec: FieldSpec, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Every pair for small fields, a uniform sample otherwise."""
    if spec.q <= EXHAUSTIVE_PAIRS_MAX_Q:
        xs, ys = np.meshgrid(np.arange(spec.q), np.arange(spec.q), indexing="ij")
        return xs.ravel(), ys.ravel()
    return rng.integers(0, spec.q, PAIR_SAMPLES), rng.integers(0, spec.q, PAIR_SAMPLES)


def _modulus(spec: FieldSpec, _: np.random.Generator) -> bool:
    return spec.modulus.bit_length() - 1 == spec.n and is_irreducible(spec.modulus)


def _generator(spec: FieldSpec, _: np.random.Generator) -> bool:
    return math.prod(spec.q_minus_1_factors) == spec.order and multiplicative_order(spec.gamma, spec) == spec.order


def _tables_match(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs, ys = _pairs(spec, rng)
    fast = spec.mul_vec(xs, ys)
    return all(int(f) == poly_mod(clmul(int(x), int(y)), spec.modulus) for x, y, f in zip(xs, ys, fast, strict=True))


def _commutative(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs, ys = _pairs(spec, rng)
    return bool(np.array_equal(spec.mul_vec(xs, ys), spec.mul_vec(ys, xs)))


def _distributive(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs, ys = _pairs(spec, rng)
    zs = rng.integers(0, spec.q, xs.size)
    return bool(np.array_equal(spec.mul_vec(xs, ys ^ zs), spec.mul_vec(xs, ys) ^ spec.mul_vec(xs, zs)))


def _associative(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs, ys = _pairs(spec, rng)
    zs = rng.integers(0, spec.q, xs.size)
    return bool(np.array_equal(spec.mul_vec(spec.mul_vec(xs, ys), zs), spec.mul_vec(xs, spec.mul_vec(ys, zs))))


def _fermat(spec: FieldSpec, _: np.random.Generator) -> bool:
    everything = np.arange(spec.q, dtype=np.int64)
    return bool(np.array_equal(spec.pow_vec(everything, spec.q), everything))


def _inverses(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs = np.arange(1, spec.q) if spec.q <= EXHAUSTIVE_PAIRS_MAX_Q else rng.integers(1, spec.q, PAIR_SAMPLES)
    return all(spec.mul(int(x), spec.inv(int(x))) == 1 for x in xs)


def _subfields(spec: FieldSpec, _: np.random.Generator) -> bool:
    for m in range(1, spec.n + 1):
        if spec.n % m:
            continue
        view = subfield_view(spec, m)
        if view.beta != 1 and multiplicative_order(view.beta, spec) != view.size - 1:
            return False
        if view.size > EXHAUSTIVE_PAIRS_MAX_Q:
            continue
        members = view.elements()
        if len(set(members)) != view.size or not all(view.contains(x) for x in members):
            return False
        if any(not view.contains(spec.mul(x, y)) or not view.contains(x ^ y) for x in members for y in members):
            return False
    return True


def _omega(spec: FieldSpec, _: np.random.Generator) -> bool:
    w1, w2 = omega(spec)
    return multiplicative_order(w1, spec) == 3 and spec.mul(w1, w1) == w2 and w1 ^ w2 == 1


def _traces(spec: FieldSpec, rng: np.random.Generator) -> bool:
    xs = rng.integers(0, spec.q, 64)
    for m in range(1, spec.n + 1):
        if spec.n % m == 0 and not all(subfield_view(spec, m).contains(trace(int(x), spec, m)) for x in xs):
            return False
    return True


def _decompositions(spec: FieldSpec, _: np.random.Generator) -> bool:
    for t in range(1, spec.n // 2 + 1):
        if spec.n % (2 * t) or 2 * t > DECOMPOSE_MAX_DEGREE:
            continue
        tview = subfield_view(spec, t)
        for a in subfield_view(spec, 2 * t).elements():
            if tview.contains(a):
                continue
            b, c, zeta, theta = decompose(a, tview)
            if not (tview.contains(b) and tview.contains(c) and tview.contains(theta)):
                return False
            if b ^ spec.mul(c, zeta) != a or zeta ^ spec.frobenius(zeta, t) != 1:
                return False
    return True


def _embeddings(spec: FieldSpec, rng: np.random.Generator) -> bool:
    for m in range(1, spec.n):
        if spec.n % m:
            continue
        small = make_field(m)
        emb = embed_field(small, spec)
        xs = rng.integers(0, small.q, 32)
        ys = rng.integers(0, small.q, 32)
        for x, y in zip(xs.tolist(), ys.tolist(), strict=True):
            if emb.forward(small.mul(x, y)) != spec.mul(emb.forward(x), emb.forward(y)):
                return False
            if emb.forward(x ^ y) != emb.forward(x) ^ emb.forward(y) or emb.backward(emb.forward(x)) != x:
                return False
    return True


CHECKS: dict[str, Check] = {
    "modulus-irreducible": _modulus,
    "generator": _generator,
    "tables-match-clmul": _tables_match,
    "commutative": _commutative,
    "distributive": _distributive,
    "associative": _associative,
    "fermat": _fermat,
    "inverses": _inverses,
    "subfields": _subfields,
    "traces": _traces,
    "embeddings": _embeddings,
}

EVEN_DEGREE_CHECKS: dict[str, Check] = {
    "omega": _omega,
    "decompose": _decompositions,
}


def field_cases(n: int) -> list[ReportCase]:
    """Run every applicable axiom check over F_{2^n}."""
    spec = make_field(n)
    checks = CHECKS | (EVEN_DEGREE_CHECKS if n % 2 == 0 else {})
    cases = []
    for i, (name, check) in enumerate(checks.items()):
        rng = np.random.default_rng(get_settings().seed + 100 * n + i)
        cases.append(ReportCase(input={"n": n, "property": name}, agree=check(spec, rng)))
    return cases


@register_suite
class FieldAxiomsSuite(Suite):
    """Field arithmetic sanity."""

    name = "fieldaxioms"
    description = "Irreducibility, generator order, ring axioms, subfields, omega, decomposition, embeddings"

    def run(self, bounds: ProfileBounds, workers: int = 1) -> Report:
        """One case per (n, property) for n <= field_max_degree."""
        builder = ReportBuilder(self.name, params={"field_max_degree": bounds.field_max_degree})
        for cases in map_cases(field_cases, range(1, bounds.field_max_degree + 1), workers):
            builder.extend(cases)
        return builder.build()
