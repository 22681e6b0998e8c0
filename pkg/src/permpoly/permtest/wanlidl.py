"""Wan-Lidl criterion for cyclotomic mapping polynomials g(x) = x^r f(x^((q-1)/d)).

g permutes F_q iff
  (a) gcd(r, (q-1)/d) = 1,
  (b) f(zeta^i) != 0 for every d-th root of unity zeta^i, and
  (c) the d values g(gamma^i)^((q-1)/d), 0 <= i < d, are pairwise distinct.
(b) and (c) together say x^r f(x)^((q-1)/d) permutes the d-th roots of unity.
"""

from dataclasses import dataclass
from math import gcd

from permpoly.errors import FieldDomainError, FieldMismatchError
from permpoly.fieldcore import FieldElement, FieldSpec
from permpoly.permtest.base import Tester
from permpoly.permtest.registry import register_tester
from permpoly.polyring import SparsePoly, eval_poly, parse_poly
from permpoly.schemas import Method, PermVerdict


@dataclass(frozen=True)
class WanLidlInstance:
    """Parameters (r, d, f) of g(x) = x^r f(x^((q-1)/d))."""

    r: int
    d: int
    f: SparsePoly

    def __post_init__(self) -> None:
        if self.r < 1:
            raise FieldDomainError(f"r must be positive, got {self.r}")
        if self.d < 1 or self.f.field.order % self.d:
            raise FieldDomainError(f"d = {self.d} does not divide q - 1 = {self.f.field.order}")

    @property
    def field(self) -> FieldSpec:
        """Field of the inner polynomial."""
        return self.f.field

    @property
    def index(self) -> int:
        """(q-1)/d."""
        return self.field.order // self.d


def _resolve(inst: WanLidlInstance, spec: FieldSpec | None) -> FieldSpec:
    if spec is not None and spec != inst.field:
        raise FieldMismatchError(f"Instance over F_2^{inst.field.n} tested over F_2^{spec.n}")
    return inst.field


def cyclotomic_poly(inst: WanLidlInstance, spec: FieldSpec | None = None) -> SparsePoly:
    """Expand x^r f(x^((q-1)/d)) into a sparse polynomial."""
    spec = _resolve(inst, spec)
    m = inst.index
    return SparsePoly.from_terms({inst.r + e * m: c for e, c in inst.f.terms.items()}, spec)


def is_pp_monomial(e: int, q: int) -> bool:
    """x^e (e >= 1) permutes F_q iff gcd(e, q-1) = 1."""
    if e < 1:
        return False
    return gcd(e, q - 1) == 1


def _first_equal_pair(values: list[FieldElement]) -> list[int] | None:
    """Indices of the first colliding pair in (value, index) order."""
    ordered = sorted((v, i) for i, v in enumerate(values))
    for (v1, i1), (v2, i2) in zip(ordered, ordered[1:]):
        if v1 == v2:
            return [i1, i2]
    return None


def unity_images(inst: WanLidlInstance, spec: FieldSpec | None = None) -> list[FieldElement]:
    """Values of x^r f(x)^((q-1)/d) at zeta^i, 0 <= i < d, zeta = gamma^((q-1)/d)."""
    spec = _resolve(inst, spec)
    m = inst.index
    zeta = spec.pow(spec.gamma, m)
    values = []
    x = 1
    for _ in range(inst.d):
        values.append(spec.mul(spec.pow(x, inst.r), spec.pow(eval_poly(inst.f, x), m)))
        x = spec.mul(x, zeta)
    return values


def roots_of_unity_check(inst: WanLidlInstance, spec: FieldSpec | None = None) -> bool:
    """Whether x^r f(x)^((q-1)/d) permutes the d-th roots of unity."""
    values = unity_images(inst, spec)
    return 0 not in values and len(set(values)) == inst.d


def _condition(tag: str, indices: list[int], **extra: int) -> dict[str, object]:
    return {"kind": "condition", "condition": tag, "indices": indices, **extra}


def _root_on_unity(inst: WanLidlInstance, spec: FieldSpec) -> int | None:
    """Index i of the first d-th root of unity with f(zeta^i) = 0."""
    zeta = spec.pow(spec.gamma, inst.index)
    y = 1
    for i in range(inst.d):
        if eval_poly(inst.f, y) == 0:
            return i
        y = spec.mul(y, zeta)
    return None


def _coset_collision(inst: WanLidlInstance, spec: FieldSpec) -> list[int] | None:
    """First pair i < j with g(gamma^i)^m = g(gamma^j)^m."""
    m = inst.index
    zeta = spec.pow(spec.gamma, m)
    # g(gamma^i)^m = gamma^(i*r*m) * f(gamma^(i*m))^m
    values = []
    x = 1
    xm = 1
    for _ in range(inst.d):
        values.append(spec.pow(spec.mul(spec.pow(x, inst.r), eval_poly(inst.f, xm)), m))
        x = spec.mul(x, spec.gamma)
        xm = spec.mul(xm, zeta)
    return _first_equal_pair(values)


def conditions_b_and_c(inst: WanLidlInstance, spec: FieldSpec | None = None) -> bool:
    """Whether conditions (b) and (c) both hold, ignoring (a)."""
    spec = _resolve(inst, spec)
    return _root_on_unity(inst, spec) is None and _coset_collision(inst, spec) is None


def wan_lidl(inst: WanLidlInstance, spec: FieldSpec | None = None) -> PermVerdict:
    """Decide PP-ness of x^r f(x^((q-1)/d)) with O(d) evaluations.

    Args:
        inst: Cyclotomic instance
        spec: Field (defaults to the instance's)

    Returns:
        PermVerdict; negatives name the failed condition (a), (b) or (c) and the indices involved
    """
    spec = _resolve(inst, spec)

    g = gcd(inst.r, inst.index)
    if g != 1:
        return PermVerdict(is_pp=False, method=Method.WANLIDL, witness=_condition("a", [], gcd=g))

    root = _root_on_unity(inst, spec)
    if root is not None:
        return PermVerdict(is_pp=False, method=Method.WANLIDL, witness=_condition("b", [root]))

    pair = _coset_collision(inst, spec)
    if pair is not None:
        return PermVerdict(is_pp=False, method=Method.WANLIDL, witness=_condition("c", pair))

    return PermVerdict(is_pp=True, method=Method.WANLIDL)


class _CyclotomicTester(Tester):
    def __init__(self, d: int | None = None, r: int = 1, inner: SparsePoly | str | None = None) -> None:
        self.d = d
        self.r = r
        self.inner = inner

    def instance(self, spec: FieldSpec) -> WanLidlInstance:
        """Build the Wan-Lidl instance from the tester options."""
        if self.d is None or self.inner is None:
            raise FieldDomainError(f"{self.name} needs d and an inner polynomial")
        inner = parse_poly(self.inner, spec) if isinstance(self.inner, str) else self.inner
        return WanLidlInstance(r=self.r, d=self.d, f=inner)

    def _matching_instance(self, poly: SparsePoly | None, spec: FieldSpec) -> WanLidlInstance:
        inst = self.instance(spec)
        if poly is not None and poly != cyclotomic_poly(inst):
            raise FieldDomainError("Polynomial is not x^r f(x^((q-1)/d)) for the given r, d and f")
        return inst


@register_tester
class WanLidlTester(_CyclotomicTester):
    """Wan-Lidl conditions (a), (b), (c)."""

    name = "wanlidl"
    description = "Cyclotomic criterion: gcd, no roots on unity, distinct d-th powers"

    def check(self, poly: SparsePoly | None, spec: FieldSpec) -> PermVerdict:
        """Run the criterion on the configured instance."""
        return wan_lidl(self._matching_instance(poly, spec), spec)


@register_tester
class RootsOfUnityTester(_CyclotomicTester):
    """Condition (a) plus a permutation check on the d-th roots of unity."""

    name = "roots-of-unity"
    description = "gcd(r, (q-1)/d) = 1 and x^r f(x)^((q-1)/d) permutes the d-th roots of unity"

    def check(self, poly: SparsePoly | None, spec: FieldSpec) -> PermVerdict:
        """Run the roots-of-unity variant."""
        inst = self._matching_instance(poly, spec)
        g = gcd(inst.r, inst.index)
        if g != 1:
            return PermVerdict(is_pp=False, method=Method.ROOTS_OF_UNITY, witness=_condition("a", [], gcd=g))
        values = unity_images(inst, spec)
        if 0 in values:
            witness = {"kind": "unity-zero", "index": values.index(0)}
            return PermVerdict(is_pp=False, method=Method.ROOTS_OF_UNITY, witness=witness)
        pair = _first_equal_pair(values)
        if pair is not None:
            witness = {"kind": "unity-collision", "indices": pair}
            return PermVerdict(is_pp=False, method=Method.ROOTS_OF_UNITY, witness=witness)
        return PermVerdict(is_pp=True, method=Method.ROOTS_OF_UNITY)
