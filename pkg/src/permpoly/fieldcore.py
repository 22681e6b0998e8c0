"""Binary fields F_{2^n} in the polynomial basis.

Elements are plain integers: bit i is the coefficient of x^i. A `FieldSpec` fixes the
modulus and a primitive element; fields up to `table_max_degree` additionally carry
log/antilog tables so scalar and vectorised arithmetic become table lookups.
"""

from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
import structlog

from permpoly.errors import DegenerateElementError, FieldDomainError, ResourceGuardError
from permpoly.settings import get_settings

logger = structlog.get_logger()

FieldElement = int
IntArray = npt.NDArray[np.int64]

MAX_DEGREE = 32


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_mod(a: int, m: int) -> int:
    """Remainder of bit polynomial a modulo m."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    result = poly_mod(1, m)
    base = poly_mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, base, m)
        base = _mulmod(base, base, m)
        e >>= 1
    return result


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def prime_factors(k: int) -> list[int]:
    """Prime factors of k by trial division, with multiplicity, ascending."""
    factors: list[int] = []
    d = 2
    while d * d <= k:
        while k % d == 0:
            factors.append(d)
            k //= d
        d += 1 if d == 2 else 2
    if k > 1:
        factors.append(k)
    return factors


def is_irreducible(modulus: int) -> bool:
    """Rabin's test: x^{2^n} = x mod m and gcd(x^{2^{n/p}} - x, m) = 1 for primes p | n."""
    n = modulus.bit_length() - 1
    if n < 1:
        return False

    x = poly_mod(0b10, modulus)
    frob = [x]  # frob[k] = x^(2^k) mod m
    for _ in range(n):
        frob.append(_mulmod(frob[-1], frob[-1], modulus))
    if frob[n] != x:
        return False

    for p in set(prime_factors(n)):
        if _gcd(modulus, frob[n // p] ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(n: int) -> int:
    """Return the numerically smallest monic irreducible polynomial of degree n over F_2.

    Args:
        n: Extension degree, 1..32

    Returns:
        Bit encoding of the modulus (bit n set)

    Raises:
        FieldDomainError: If n is out of range
    """
    if not 1 <= n <= MAX_DEGREE:
        raise FieldDomainError(f"Degree must be in 1..{MAX_DEGREE}, got {n}")
    for candidate in range(1 << n, 1 << (n + 1)):
        if is_irreducible(candidate):
            return candidate
    raise AssertionError(f"no irreducible polynomial of degree {n}")  # pragma: no cover


@dataclass
class _LogTables:
    exp: IntArray  # gamma^i for 0 <= i < 2(q-1)
    log: IntArray  # log[0] is a placeholder
    exp_list: list[int]
    log_list: list[int]


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of F_{2^n}."""

    n: int
    modulus: int
    gamma: FieldElement
    q_minus_1_factors: tuple[int, ...]

    @property
    def q(self) -> int:
        """Field size 2^n."""
        return 1 << self.n

    @property
    def order(self) -> int:
        """Order of the multiplicative group, 2^n - 1."""
        return (1 << self.n) - 1

    @cached_property
    def _tables(self) -> _LogTables | None:
        if self.gamma == 0 or self.n > get_settings().table_max_degree:
            return None

        order = self.order
        exp = np.empty(order, dtype=np.int64)
        exp[0] = 1
        filled = 1
        # Doubling: the next block is the filled prefix scaled by gamma^filled
        while filled < order:
            step = min(filled, order - filled)
            exp[filled : filled + step] = self._linear_scale(exp[:step], _powmod(self.gamma, filled, self.modulus))
            filled += step

        log = np.zeros(self.q, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        exp2 = np.concatenate([exp, exp])
        logger.debug("Built log tables", n=self.n, size=self.q)
        return _LogTables(exp=exp2, log=log, exp_list=exp2.tolist(), log_list=log.tolist())

    @property
    def has_tables(self) -> bool:
        """Whether log/antilog tables back this field."""
        return self._tables is not None

    def _linear_scale(self, values: IntArray, c: int) -> IntArray:
        """Multiply every entry by c using the F_2-linear map y -> c*y."""
        result = np.zeros_like(values)
        basis = poly_mod(c, self.modulus)
        for i in range(self.n):
            result ^= ((values >> i) & 1) * basis
            basis = poly_mod(basis << 1, self.modulus)
        return result

    def contains(self, x: int) -> bool:
        """Whether x is a valid element encoding."""
        return 0 <= x < self.q

    def elements(self) -> range:
        """All elements in encoding order."""
        return range(self.q)

    def parse(self, text: str) -> FieldElement:
        """Parse a lowercase hex encoding (optional 0x prefix)."""
        try:
            value = int(text.strip().lower().removeprefix("0x") or "0", 16)
        except ValueError as e:
            raise FieldDomainError(f"Invalid field element: {text!r}") from e
        if not self.contains(value):
            raise FieldDomainError(f"Element {text} does not fit in F_2^{self.n}")
        return value

    @staticmethod
    def format(x: FieldElement) -> str:
        """Format an element as lowercase hex."""
        return f"{x:x}"

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """Product of two elements."""
        if not x or not y:
            return 0
        t = self._tables
        if t is not None:
            return t.exp_list[t.log_list[x] + t.log_list[y]]
        return _mulmod(x, y, self.modulus)

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        """x^e for e >= 0, with 0^0 = 1."""
        if e < 0:
            raise FieldDomainError(f"Negative exponent {e}")
        if e == 0:
            return 1
        if x == 0:
            return 0
        t = self._tables
        if t is not None:
            return t.exp_list[(t.log_list[x] * e) % self.order]
        return _powmod(x, (e - 1) % self.order + 1, self.modulus)

    def inv(self, x: FieldElement) -> FieldElement:
        """Multiplicative inverse via x^(q-2)."""
        if x == 0:
            raise FieldDomainError("Zero has no multiplicative inverse")
        return self.pow(x, self.q - 2)

    def div(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """x / y."""
        return self.mul(x, self.inv(y))

    def frobenius(self, x: FieldElement, k: int = 1) -> FieldElement:
        """x^(2^k) by k squarings (k reduced mod n)."""
        for _ in range(k % self.n):
            x = self.mul(x, x)
        return x

    def mul_const_vec(self, values: IntArray, c: FieldElement) -> IntArray:
        """Multiply an array of elements by a constant."""
        if c == 0:
            return np.zeros_like(values)
        t = self._tables
        if t is None:
            return self._linear_scale(values, c)
        scaled = t.exp[t.log[values] + t.log_list[c]]
        return np.where(values != 0, scaled, 0)

    def mul_vec(self, xs: IntArray, ys: IntArray) -> IntArray:
        """Elementwise product of two arrays."""
        t = self._tables
        if t is None:
            return np.array([self.mul(int(a), int(b)) for a, b in zip(xs, ys, strict=True)], dtype=np.int64)
        prod = t.exp[t.log[xs] + t.log[ys]]
        return np.where((xs != 0) & (ys != 0), prod, 0)

    def pow_vec(self, xs: IntArray, e: int) -> IntArray:
        """Elementwise x^e, with 0^0 = 1."""
        if e == 0:
            return np.ones_like(xs)
        t = self._tables
        if t is None:
            return np.array([self.pow(int(a), e) for a in xs], dtype=np.int64)
        powered = t.exp[(t.log[xs] * (e % self.order)) % self.order]
        return np.where(xs != 0, powered, 0)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    """Sum in characteristic 2."""
    return x ^ y


def mul(x: FieldElement, y: FieldElement, spec: FieldSpec) -> FieldElement:
    """Product in spec."""
    return spec.mul(x, y)


def power(x: FieldElement, e: int, spec: FieldSpec) -> FieldElement:
    """x^e in spec."""
    return spec.pow(x, e)


def inv(x: FieldElement, spec: FieldSpec) -> FieldElement:
    """Inverse in spec."""
    return spec.inv(x)


def _raw_order(x: int, spec: FieldSpec) -> int:
    order = spec.order
    for p in sorted(set(spec.q_minus_1_factors)):
        while order % p == 0 and _powmod(x, order // p, spec.modulus) == 1:
            order //= p
    return order


def multiplicative_order(x: FieldElement, spec: FieldSpec) -> int:
    """Least k >= 1 with x^k = 1.

    Raises:
        FieldDomainError: If x is zero or not an element of spec
    """
    if x == 0 or not spec.contains(x):
        raise FieldDomainError(f"Order undefined for {x:x} in F_2^{spec.n}")
    order = spec.order
    for p in sorted(set(spec.q_minus_1_factors)):
        while order % p == 0 and spec.pow(x, order // p) == 1:
            order //= p
    return order


def find_primitive(spec: FieldSpec) -> FieldElement:
    """Smallest-encoding element of multiplicative order 2^n - 1."""
    for candidate in range(1, spec.q):
        if _raw_order(candidate, spec) == spec.order:
            return candidate
    raise AssertionError("multiplicative group has no generator")  # pragma: no cover


@lru_cache(maxsize=None)
def make_field(n: int, modulus: int | None = None) -> FieldSpec:
    """Construct F_{2^n}, with the smallest irreducible modulus unless one is supplied.

    Args:
        n: Extension degree, 1..32
        modulus: Optional bit encoding of a monic irreducible degree-n polynomial

    Returns:
        FieldSpec with primitive element and factorization of 2^n - 1

    Raises:
        FieldDomainError: If n is out of range or the modulus is not irreducible of degree n
    """
    if not 1 <= n <= MAX_DEGREE:
        raise FieldDomainError(f"Degree must be in 1..{MAX_DEGREE}, got {n}")
    if modulus is None:
        modulus = find_irreducible(n)
    elif modulus.bit_length() - 1 != n:
        raise FieldDomainError(f"Modulus {modulus:x} is not monic of degree {n}")
    elif not is_irreducible(modulus):
        raise FieldDomainError(f"Modulus {modulus:x} is reducible")

    draft = FieldSpec(n=n, modulus=modulus, gamma=0, q_minus_1_factors=tuple(prime_factors((1 << n) - 1)))
    spec = replace(draft, gamma=find_primitive(draft))
    logger.debug("Field constructed", n=n, modulus=f"{modulus:x}", gamma=f"{spec.gamma:x}")
    return spec


@dataclass(frozen=True)
class SubfieldView:
    """The subfield F_{2^m} inside a parent field, generated by beta."""

    parent: FieldSpec
    m: int
    beta: FieldElement
    size: int

    @cached_property
    def members(self) -> tuple[FieldElement, ...]:
        """0 followed by beta^k for 0 <= k < 2^m - 1."""
        if self.m > get_settings().brute_max_degree:
            raise ResourceGuardError(f"Refusing to enumerate a subfield of size 2^{self.m}")
        values = [0]
        y = 1
        for _ in range(self.size - 1):
            values.append(y)
            y = self.parent.mul(y, self.beta)
        return tuple(values)

    def elements(self) -> tuple[FieldElement, ...]:
        """Enumerate the subfield."""
        return self.members

    def contains(self, x: FieldElement) -> bool:
        """Frobenius fixed-point test x^(2^m) = x."""
        return self.parent.frobenius(x, self.m) == x


@lru_cache(maxsize=None)
def subfield_view(spec: FieldSpec, m: int) -> SubfieldView:
    """View of F_{2^m} inside spec.

    Raises:
        FieldDomainError: If m does not divide n
    """
    if m < 1 or spec.n % m:
        raise FieldDomainError(f"{m} does not divide {spec.n}")
    beta = spec.pow(spec.gamma, spec.order // ((1 << m) - 1))
    return SubfieldView(parent=spec, m=m, beta=beta, size=1 << m)


def trace(x: FieldElement, spec: FieldSpec, m: int) -> FieldElement:
    """Relative trace from F_{2^n} down to F_{2^m}."""
    if m < 1 or spec.n % m:
        raise FieldDomainError(f"{m} does not divide {spec.n}")
    total = 0
    y = x
    for _ in range(spec.n // m):
        total ^= y
        y = spec.frobenius(y, m)
    return total


def omega(spec: FieldSpec) -> tuple[FieldElement, FieldElement]:
    """The two roots of x^2 + x + 1, ordered by encoding.

    Raises:
        FieldDomainError: If n is odd (F_4 is not a subfield)
    """
    if spec.n % 2:
        raise FieldDomainError(f"F_4 is not a subfield of F_2^{spec.n}")
    w = spec.pow(spec.gamma, spec.order // 3)
    w2 = spec.mul(w, w)
    return (w, w2) if w < w2 else (w2, w)


class Decomposition(NamedTuple):
    """a = b + c*zeta with b, c in F_{2^t} and theta = zeta^2 + zeta."""

    b: FieldElement
    c: FieldElement
    zeta: FieldElement
    theta: FieldElement


@lru_cache(maxsize=None)
def conjugate_unit(spec: FieldSpec, t: int) -> FieldElement:
    """The fixed zeta with zeta + zeta^(2^t) = 1, inside F_{2^{2t}} of spec."""
    if spec.n % (2 * t):
        raise FieldDomainError(f"F_2^{2 * t} is not a subfield of F_2^{spec.n}")
    if 2 * t == spec.n:
        candidates: range | tuple[int, ...] = spec.elements()
    else:
        candidates = tuple(sorted(subfield_view(spec, 2 * t).members))
    eta = next(x for x in candidates if spec.frobenius(x, t) != x)
    return spec.div(eta, eta ^ spec.frobenius(eta, t))


def decompose(a: FieldElement, tview: SubfieldView) -> Decomposition:
    """Split a in F_{2^{2t}} \\ F_{2^t} as b + c*zeta.

    Args:
        a: Element of the F_{2^{2t}} subfield of tview's parent
        tview: View of F_{2^t}

    Returns:
        Decomposition (b, c, zeta, theta)

    Raises:
        FieldDomainError: If a lies outside F_{2^{2t}}
        DegenerateElementError: If a lies in F_{2^t} (c would be 0)
    """
    spec = tview.parent
    t = tview.m
    if not spec.contains(a) or spec.frobenius(a, 2 * t) != a:
        raise FieldDomainError(f"{a:x} is not in F_2^{2 * t}")
    c = a ^ spec.frobenius(a, t)
    if c == 0:
        raise DegenerateElementError(f"{a:x} lies in F_2^{t}; c = 0", condition="b")
    zeta = conjugate_unit(spec, t)
    theta = spec.mul(zeta, zeta) ^ zeta
    b = a ^ spec.mul(c, zeta)
    return Decomposition(b=b, c=c, zeta=zeta, theta=theta)


@dataclass(frozen=True)
class FieldEmbedding:
    """Field homomorphism F_{2^m} -> F_{2^n} sending x to a root of small's modulus."""

    small: FieldSpec
    big: FieldSpec
    root: FieldElement

    @cached_property
    def _basis(self) -> tuple[FieldElement, ...]:
        images = [1]
        for _ in range(self.small.n - 1):
            images.append(self.big.mul(images[-1], self.root))
        return tuple(images)

    @cached_property
    def _preimages(self) -> dict[FieldElement, FieldElement]:
        return {self.forward(x): x for x in self.small.elements()}

    def forward(self, x: FieldElement) -> FieldElement:
        """Image of x in the big field."""
        image = 0
        for i, b in enumerate(self._basis):
            if (x >> i) & 1:
                image ^= b
        return image

    def backward(self, y: FieldElement) -> FieldElement:
        """Preimage of y, which must lie in the image subfield."""
        try:
            return self._preimages[y]
        except KeyError:
            raise FieldDomainError(f"{y:x} is not in the image of F_2^{self.small.n}") from None


def _eval_binary_poly(bits: int, x: FieldElement, spec: FieldSpec) -> FieldElement:
    acc = 0
    for i in range(bits.bit_length() - 1, -1, -1):
        acc = spec.mul(acc, x) ^ ((bits >> i) & 1)
    return acc


@lru_cache(maxsize=None)
def embed_field(small: FieldSpec, big: FieldSpec) -> FieldEmbedding:
    """Deterministic embedding of small into big (smallest-encoding root).

    Raises:
        FieldDomainError: If small's degree does not divide big's
    """
    if big.n % small.n:
        raise FieldDomainError(f"F_2^{small.n} does not embed in F_2^{big.n}")
    if small.n == big.n and small.modulus == big.modulus:
        return FieldEmbedding(small=small, big=big, root=poly_mod(0b10, big.modulus))
    view = subfield_view(big, small.n)
    root = min(r for r in view.members if _eval_binary_poly(small.modulus, r, big) == 0)
    logger.debug("Embedding constructed", small=small.n, big=big.n, root=f"{root:x}")
    return FieldEmbedding(small=small, big=big, root=root)
