"""Classifiers for the binomial and trinomial PP families and the reduction between them.

Trinomials f = x^(2^s+1) + x^(2^(s-1)+1) + alpha*x over F_{2^t} permute iff t is odd,
alpha = 1 and s is 1 or 2. Binomials g = x^((2^n-1)/(2^t-1)+1) + a*x over F_{2^n},
n = 2^s*t, a in F_{2^{2t}}, permute iff t is odd, s is 1 or 2 and a^(2^t-1) is a
primitive cube root of unity. Canonical mode first reduces s modulo t, since
x^(2^s) and x^(2^(s mod t)) agree on F_{2^t}.
"""

from dataclasses import dataclass

import structlog

from permpoly.errors import DegenerateElementError, FieldDomainError, ResourceGuardError
from permpoly.fieldcore import (
    FieldElement,
    FieldSpec,
    decompose,
    embed_field,
    make_field,
    omega,
    subfield_view,
)
from permpoly.permtest import WanLidlInstance
from permpoly.polyring import SparsePoly
from permpoly.schemas import ClassifierDecision, ClassifierMode, FailedCondition, Method, PermVerdict
from permpoly.settings import get_settings

logger = structlog.get_logger()


@dataclass(frozen=True)
class TrinomialParams:
    """x^(2^s+1) + x^(2^(s-1)+1) + alpha*x over F_{2^t}."""

    s: int
    t: int
    alpha: FieldElement
    field: FieldSpec | None = None

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise FieldDomainError(f"s and t must be positive (got s={self.s}, t={self.t})")
        spec = self.field or make_field(self.t)
        if spec.n != self.t:
            raise FieldDomainError(f"Trinomial with t={self.t} over F_2^{spec.n}")
        if not spec.contains(self.alpha):
            raise FieldDomainError(f"alpha = {self.alpha:x} is not in F_2^{self.t}")
        object.__setattr__(self, "field", spec)

    @property
    def spec(self) -> FieldSpec:
        """The field F_{2^t}."""
        assert self.field is not None
        return self.field

    def poly(self) -> SparsePoly:
        """The trinomial as a canonical sparse polynomial."""
        terms: dict[int, FieldElement] = {}
        for e, c in (((1 << self.s) + 1, 1), ((1 << (self.s - 1)) + 1, 1), (1, self.alpha)):
            terms[e] = terms.get(e, 0) ^ c
        return SparsePoly.from_terms(terms, self.spec)


@dataclass(frozen=True)
class BinomialParams:
    """x^((2^n-1)/(2^t-1)+1) + a*x with n = 2^s*t and a given in make_field(2t)."""

    s: int
    t: int
    a: FieldElement
    field: FieldSpec | None = None

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise FieldDomainError(f"s and t must be positive (got s={self.s}, t={self.t})")
        spec = self.field or make_field(2 * self.t)
        if spec.n != 2 * self.t:
            raise FieldDomainError(f"a must be given in F_2^{2 * self.t}, not F_2^{spec.n}")
        if not spec.contains(self.a):
            raise FieldDomainError(f"a = {self.a:x} is not in F_2^{2 * self.t}")
        object.__setattr__(self, "field", spec)

    @property
    def spec(self) -> FieldSpec:
        """The field F_{2^{2t}} that holds a."""
        assert self.field is not None
        return self.field

    @property
    def n(self) -> int:
        """Degree of the ambient field, 2^s * t."""
        return (1 << self.s) * self.t

    @property
    def exponent(self) -> int:
        """(2^n - 1)/(2^t - 1) + 1."""
        return ((1 << self.n) - 1) // ((1 << self.t) - 1) + 1

    def ambient(self) -> FieldSpec:
        """The default F_{2^n}."""
        return make_field(self.n)

    def embedded_a(self, ambient: FieldSpec) -> FieldElement:
        """a moved into ambient."""
        return embed_field(self.spec, ambient).forward(self.a)

    def poly(self, ambient: FieldSpec | None = None) -> SparsePoly:
        """The binomial over F_{2^n}."""
        ambient = ambient or self.ambient()
        self._check_ambient(ambient)
        return SparsePoly.from_terms({self.exponent: 1, 1: self.embedded_a(ambient)}, ambient)

    def wan_lidl_instance(self, ambient: FieldSpec | None = None) -> WanLidlInstance:
        """g = x * f(x^((q-1)/d)) with d = 2^t - 1 and f(y) = y + a."""
        ambient = ambient or self.ambient()
        self._check_ambient(ambient)
        inner = SparsePoly.from_terms({1: 1, 0: self.embedded_a(ambient)}, ambient)
        return WanLidlInstance(r=1, d=(1 << self.t) - 1, f=inner)

    def _check_ambient(self, ambient: FieldSpec) -> None:
        if ambient.n != self.n:
            raise FieldDomainError(f"Binomial with n={self.n} over F_2^{ambient.n}")


def _decision(failed: FailedCondition | None, mode: ClassifierMode) -> ClassifierDecision:
    return ClassifierDecision(is_pp=failed is None, failed_condition=failed, mode=mode)


def classify_trinomial_literal(p: TrinomialParams) -> ClassifierDecision:
    """t odd, alpha = 1, s in {1, 2}, checked in that order."""
    mode = ClassifierMode.LITERAL
    if p.t % 2 == 0:
        return _decision(FailedCondition.T_PARITY, mode)
    if p.alpha != 1:
        return _decision(FailedCondition.ALPHA_VALUE, mode)
    if p.s not in (1, 2):
        return _decision(FailedCondition.S_RANGE, mode)
    return _decision(None, mode)


def _canonical_s_ok(s: int, t: int) -> bool:
    # s = 0 mod t only permutes over F_2
    return t == 1 or s % t in (1, 2)


def classify_trinomial_canonical(p: TrinomialParams) -> ClassifierDecision:
    """Like the literal classifier with s replaced by s mod t."""
    mode = ClassifierMode.CANONICAL
    if p.t % 2 == 0:
        return _decision(FailedCondition.T_PARITY, mode)
    if p.alpha != 1:
        return _decision(FailedCondition.ALPHA_VALUE, mode)
    if not _canonical_s_ok(p.s, p.t):
        return _decision(FailedCondition.S_RANGE, mode)
    return _decision(None, mode)


def classify_trinomial(p: TrinomialParams, mode: ClassifierMode = ClassifierMode.CANONICAL) -> ClassifierDecision:
    """Dispatch on mode."""
    if mode == ClassifierMode.LITERAL:
        return classify_trinomial_literal(p)
    return classify_trinomial_canonical(p)


def omega_membership(a: FieldElement, t: int, spec: FieldSpec) -> bool:
    """Whether a^(2^t - 1) is a primitive cube root of unity."""
    return spec.pow(a, (1 << t) - 1) in omega(spec)


def classify_binomial(p: BinomialParams, mode: ClassifierMode = ClassifierMode.CANONICAL) -> ClassifierDecision:
    """Decide the binomial family in O(1) field operations.

    Args:
        p: Binomial parameters
        mode: literal (s in {1, 2}) or canonical (s mod t in {1, 2}, or t = 1)

    Returns:
        ClassifierDecision naming the first failed condition

    Raises:
        FieldDomainError: If a = 0 (condition a-zero)
    """
    if p.a == 0:
        raise FieldDomainError("a must be nonzero", condition=FailedCondition.A_ZERO.value)
    if p.t % 2 == 0:
        return _decision(FailedCondition.T_PARITY, mode)
    s_ok = p.s in (1, 2) if mode == ClassifierMode.LITERAL else _canonical_s_ok(p.s, p.t)
    if not s_ok:
        return _decision(FailedCondition.S_RANGE, mode)
    if not omega_membership(p.a, p.t, p.spec):
        return _decision(FailedCondition.A_MEMBERSHIP, mode)
    return _decision(None, mode)


def reduce_binomial(p: BinomialParams, ambient: FieldSpec | None = None) -> tuple[TrinomialParams, FieldElement]:
    """Reduce the binomial to a trinomial over F_{2^t}.

    With a = b + c*zeta, g permutes F_{2^n} iff x(x^2 + cx + N)^(2^(s-1)) permutes
    F_{2^t}, where N = b^2 + bc + c^2*theta is the norm of a. Substituting x = cy
    scales that map by c^(2^s+1) and leaves the trinomial with
    alpha = (N / c^2)^(2^(s-1)).

    Args:
        p: Binomial parameters
        ambient: Field to compute in, F_{2^n} or F_{2^{2t}} (defaults to a's own field)

    Returns:
        (TrinomialParams over make_field(t), c expressed in the field used)

    Raises:
        DegenerateElementError: If a lies in F_{2^t} (condition b fails, no reduction)
    """
    spec = ambient or p.spec
    if spec.n % (2 * p.t):
        raise FieldDomainError(f"F_2^{2 * p.t} is not a subfield of F_2^{spec.n}")
    a = embed_field(p.spec, spec).forward(p.a)
    try:
        dec = decompose(a, subfield_view(spec, p.t))
    except DegenerateElementError as e:
        raise DegenerateElementError(
            f"a = {p.a:x} lies in F_2^{p.t}: condition (b) fails, not a PP, no reduction", condition="b"
        ) from e

    norm = spec.mul(dec.b, dec.b) ^ spec.mul(dec.b, dec.c) ^ spec.mul(spec.mul(dec.c, dec.c), dec.theta)
    alpha_big = spec.frobenius(spec.div(norm, spec.mul(dec.c, dec.c)), p.s - 1)
    small = make_field(p.t)
    alpha = embed_field(small, spec).backward(alpha_big)
    return TrinomialParams(s=p.s, t=p.t, alpha=alpha, field=small), dec.c


def subfield_map_verdict(p: BinomialParams, ambient: FieldSpec | None = None) -> PermVerdict:
    """Test whether x -> x(x + a)^((2^n-1)/(2^t-1)) permutes the F_{2^t} subfield.

    Raises:
        ResourceGuardError: If n exceeds brute_max_degree
    """
    limit = get_settings().brute_max_degree
    if p.n > limit:
        raise ResourceGuardError(f"Subfield map refused for n = {p.n} > {limit}")
    ambient = ambient or p.ambient()
    if ambient.n != p.n:
        raise FieldDomainError(f"Binomial with n={p.n} over F_2^{ambient.n}")

    a = p.embedded_a(ambient)
    e = ((1 << p.n) - 1) // ((1 << p.t) - 1)
    first_preimage: dict[FieldElement, FieldElement] = {}
    for x in sorted(subfield_view(ambient, p.t).members):
        image = ambient.mul(x, ambient.pow(x ^ a, e))
        if image in first_preimage:
            witness = {
                "kind": "collision",
                "x1": ambient.format(first_preimage[image]),
                "x2": ambient.format(x),
                "image": ambient.format(image),
            }
            return PermVerdict(is_pp=False, method=Method.SUBFIELD_MAP, witness=witness)
        first_preimage[image] = x
    return PermVerdict(is_pp=True, method=Method.SUBFIELD_MAP)


@dataclass(frozen=True)
class MembershipCheck:
    """Outcome of the four equivalent conditions on a."""

    agree: bool
    verdict: bool
    conditions: dict[str, bool]


def membership_conditions_agree(a: FieldElement, t: int, spec: FieldSpec | None = None) -> MembershipCheck:
    """Evaluate the four formulations of "a^(2^t-1) is a cube root of unity".

    alpha-condition: b^2 + bc + c^2*theta = c^2 (false for a in F_{2^t}).
    poly-condition: a^(2^(t+1)) + a^2 + a^(2^t+1) = 0.
    root-condition: a^(2^t-1) in {omega, omega^2}.
    coset-condition: a in (omega F_{2^t}* u omega^2 F_{2^t}*) minus F_{2^t}.

    Args:
        a: Nonzero element of F_{2^{2t}}
        t: Half degree
        spec: F_{2^{2t}} (defaults to make_field(2t))

    Returns:
        MembershipCheck with the agreement flag, the common verdict and each condition

    Raises:
        FieldDomainError: If a = 0
    """
    spec = spec or make_field(2 * t)
    if spec.n != 2 * t:
        raise FieldDomainError(f"Membership conditions need F_2^{2 * t}, got F_2^{spec.n}")
    if a == 0 or not spec.contains(a):
        raise FieldDomainError("a must be a nonzero element", condition=FailedCondition.A_ZERO.value)

    tview = subfield_view(spec, t)
    in_subfield = tview.contains(a)

    if in_subfield:
        alpha_condition = False
    else:
        dec = decompose(a, tview)
        c2 = spec.mul(dec.c, dec.c)
        norm = spec.mul(dec.b, dec.b) ^ spec.mul(dec.b, dec.c) ^ spec.mul(c2, dec.theta)
        alpha_condition = norm == c2

    a_conj = spec.frobenius(a, t)
    poly_condition = (spec.frobenius(a_conj, 1) ^ spec.mul(a, a) ^ spec.mul(a_conj, a)) == 0

    root_condition = spec.pow(a, (1 << t) - 1) in omega(spec)

    cosets = {spec.mul(w, y) for w in omega(spec) for y in tview.members if y}
    coset_condition = a in cosets and not in_subfield

    conditions = {
        "alpha-condition": alpha_condition,
        "poly-condition": poly_condition,
        "root-condition": root_condition,
        "coset-condition": coset_condition,
    }
    agree = len(set(conditions.values())) == 1
    return MembershipCheck(agree=agree, verdict=root_condition, conditions=conditions)
