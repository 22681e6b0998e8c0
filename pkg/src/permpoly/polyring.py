"""Sparse polynomials over F_q reduced modulo x^q - x."""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from functools import lru_cache
from typing import Literal

import numpy as np

from permpoly.errors import FieldDomainError, FieldMismatchError
from permpoly.fieldcore import FieldElement, FieldSpec, IntArray

PowerStrategy = Literal["incremental", "square"]

# Below this many term products the dict convolution beats the dense path
_DENSE_THRESHOLD = 256


def reduce_exponent(e: int, q: int) -> int:
    """Exponent of x^e modulo x^q - x: e > 0 lands in 1..q-1, e = 0 is inert."""
    if e < 0:
        raise FieldDomainError(f"Negative exponent {e}")
    return (e - 1) % (q - 1) + 1 if e else 0


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Exponent -> nonzero coefficient map over a field."""

    terms: Mapping[int, FieldElement]
    field: FieldSpec
    _canonical: bool = dataclass_field(default=False, repr=False, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.field == other.field and dict(self.terms) == dict(other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "SparsePoly":
        """The zero polynomial."""
        return cls({}, spec, True)

    @classmethod
    def one(cls, spec: FieldSpec) -> "SparsePoly":
        """The constant 1."""
        return cls({0: 1}, spec, True)

    @classmethod
    def from_terms(cls, terms: Mapping[int, FieldElement], spec: FieldSpec) -> "SparsePoly":
        """Build and canonicalize from an arbitrary exponent map."""
        return canonicalize(cls(dict(terms), spec))

    @property
    def degree(self) -> int:
        """Largest exponent, -1 for the zero polynomial."""
        return max(self.terms, default=-1)

    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self.terms


def monomial(e: int, coeff: FieldElement, spec: FieldSpec) -> SparsePoly:
    """coeff * x^e, canonicalized."""
    return SparsePoly.from_terms({e: coeff}, spec)


def canonicalize(p: SparsePoly, q: int | None = None) -> SparsePoly:
    """Reduce exponents modulo x^q - x, merging colliding coefficients and dropping zeros."""
    if p._canonical and q is None:
        return p
    q = q or p.field.q
    merged: dict[int, FieldElement] = {}
    for e, c in p.terms.items():
        r = reduce_exponent(e, q)
        merged[r] = merged.get(r, 0) ^ c
    return SparsePoly({e: c for e, c in sorted(merged.items()) if c}, p.field, True)


def _check_same_field(p1: SparsePoly, p2: SparsePoly) -> None:
    if p1.field != p2.field:
        raise FieldMismatchError(f"Polynomials over F_2^{p1.field.n} and F_2^{p2.field.n}")


def poly_add(p1: SparsePoly, p2: SparsePoly) -> SparsePoly:
    """Sum of two polynomials."""
    _check_same_field(p1, p2)
    merged = dict(p1.terms)
    for e, c in p2.terms.items():
        merged[e] = merged.get(e, 0) ^ c
    return canonicalize(SparsePoly(merged, p1.field))


def to_dense(p: SparsePoly) -> IntArray:
    """Coefficient array of length q indexed by exponent."""
    dense = np.zeros(p.field.q, dtype=np.int64)
    for e, c in canonicalize(p).terms.items():
        dense[e] = c
    return dense


def from_dense(dense: IntArray, spec: FieldSpec) -> SparsePoly:
    """Sparse view of a canonical coefficient array."""
    nonzero = np.flatnonzero(dense)
    return SparsePoly({int(e): int(dense[e]) for e in nonzero}, spec, True)


@lru_cache(maxsize=1024)
def _shift_indices(q: int, e: int) -> IntArray:
    """Target exponent for each source exponent 1..q-1 after multiplying by x^e."""
    src = np.arange(1, q, dtype=np.int64)
    target = (src + e - 1) % (q - 1) + 1
    target.setflags(write=False)
    return target


def _mul_dense_sparse(dense: IntArray, terms: Mapping[int, FieldElement], spec: FieldSpec) -> IntArray:
    q = spec.q
    out = np.zeros(q, dtype=np.int64)
    for e, c in terms.items():
        scaled = spec.mul_const_vec(dense, c)
        if e == 0:
            out ^= scaled
            continue
        out[_shift_indices(q, e)] ^= scaled[1:]
        out[reduce_exponent(e, q)] ^= int(scaled[0])
    return out


def poly_mul(p1: SparsePoly, p2: SparsePoly) -> SparsePoly:
    """Product reduced modulo x^q - x.

    Raises:
        FieldMismatchError: If the operands live over different fields
    """
    _check_same_field(p1, p2)
    spec = p1.field
    p1, p2 = canonicalize(p1), canonicalize(p2)
    if len(p1) > len(p2):
        p1, p2 = p2, p1
    if not p1.terms:
        return SparsePoly.zero(spec)

    if len(p1) * len(p2) <= _DENSE_THRESHOLD:
        product: dict[int, FieldElement] = {}
        for e1, c1 in p1.terms.items():
            for e2, c2 in p2.terms.items():
                e = reduce_exponent(e1 + e2, spec.q)
                product[e] = product.get(e, 0) ^ spec.mul(c1, c2)
        return canonicalize(SparsePoly(product, spec))

    return from_dense(_mul_dense_sparse(to_dense(p2), p1.terms, spec), spec)


def iter_powers(p: SparsePoly, k_max: int) -> Iterator[tuple[int, IntArray]]:
    """Yield (k, dense p^k) for 1 <= k <= k_max, one multiplication per step."""
    p = canonicalize(p)
    dense = to_dense(p)
    for k in range(1, k_max + 1):
        if k > 1:
            dense = _mul_dense_sparse(dense, p.terms, p.field)
        yield k, dense


def poly_pow_mod(p: SparsePoly, k: int, q: int | None = None, strategy: PowerStrategy = "incremental") -> SparsePoly:
    """p^k modulo x^q - x.

    Args:
        p: Base polynomial
        k: Exponent, k >= 0
        q: Field size (defaults to p's field)
        strategy: "incremental" multiplies by p k times; "square" uses square-and-multiply

    Returns:
        The reduced power
    """
    if k < 0:
        raise FieldDomainError(f"Negative exponent {k}")
    if q is not None and q != p.field.q:
        raise FieldMismatchError(f"q={q} does not match F_2^{p.field.n}")
    spec = p.field
    if k == 0:
        return SparsePoly.one(spec)

    if strategy == "incremental":
        last = to_dense(p)
        for _, dense in iter_powers(p, k):
            last = dense
        return from_dense(last, spec)

    result = SparsePoly.one(spec)
    base = canonicalize(p)
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def eval_poly(p: SparsePoly, x0: FieldElement) -> FieldElement:
    """Value of p at x0; the constant term is added as-is."""
    spec = p.field
    total = 0
    for e, c in p.terms.items():
        total ^= c if e == 0 else spec.mul(c, spec.pow(x0, e))
    return total


def eval_many(p: SparsePoly, xs: IntArray) -> IntArray:
    """Vectorised evaluation at every point of xs."""
    spec = p.field
    total = np.zeros_like(xs)
    for e, c in p.terms.items():
        if e == 0:
            total ^= c
        else:
            total ^= spec.mul_const_vec(spec.pow_vec(xs, e), c)
    return total


def coeff_top(p: SparsePoly, q: int | None = None) -> FieldElement:
    """Coefficient of x^(q-1) (zero if absent)."""
    q = q or p.field.q
    return canonicalize(p, q).terms.get(q - 1, 0)


def parse_poly(text: str, spec: FieldSpec) -> SparsePoly:
    """Parse comma-separated EXP:COEFHEX pairs, e.g. ``5:1,3:1,1:1``."""
    terms: dict[int, FieldElement] = {}
    for chunk in filter(None, (part.strip() for part in text.split(","))):
        exp_text, sep, coeff_text = chunk.partition(":")
        if not sep:
            raise FieldDomainError(f"Malformed term {chunk!r}; expected EXP:COEFHEX")
        try:
            e = int(exp_text)
        except ValueError as err:
            raise FieldDomainError(f"Malformed exponent in {chunk!r}") from err
        if e < 0:
            raise FieldDomainError(f"Negative exponent in {chunk!r}")
        terms[e] = terms.get(e, 0) ^ spec.parse(coeff_text)
    return SparsePoly.from_terms(terms, spec)


def format_poly(p: SparsePoly) -> str:
    """Inverse of parse_poly, highest exponent first."""
    return ",".join(f"{e}:{c:x}" for e, c in sorted(p.terms.items(), reverse=True))
