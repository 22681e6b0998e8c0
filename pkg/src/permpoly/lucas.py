"""Lucas-theorem multinomials and the x^(2^t-1) coefficient of trinomial powers.

For f = x^(2^s+1) + x^(2^(s-1)+1) + alpha*x the multinomial expansion gives

    f^k = sum over u+v+w = k of (k; u, v, w) alpha^w x^((2^s+1)u + (2^(s-1)+1)v + w)

and after reduction modulo x^(2^t) - x the top coefficient collects the terms whose
exponent is a positive multiple of 2^t - 1. Mod 2 the multinomial is 1 exactly when the
parts add without carries.
"""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from permpoly.errors import FieldDomainError, ResourceGuardError
from permpoly.fieldcore import FieldElement, FieldSpec, IntArray, make_field
from permpoly.settings import get_settings

SMALL_PRIMES = frozenset(p for p in range(2, 65) if all(p % d for d in range(2, p)))
MAX_PASCAL = 4096


class ExponentTriple(NamedTuple):
    """Multinomial index (u, v, w) whose monomial lands on ell*(2^t - 1)."""

    u: int
    v: int
    w: int
    ell: int


def wt(a: int) -> int:
    """Hamming weight."""
    return a.bit_count()


def base_digits(k: int, p: int) -> list[int]:
    """Base-p digits of k, least significant first (empty for 0)."""
    digits = []
    while k:
        k, d = divmod(k, p)
        digits.append(d)
    return digits


def _check_parts(k: int, parts: list[int]) -> None:
    if any(part < 0 for part in parts):
        raise FieldDomainError(f"Negative part in {parts}")
    if sum(parts) != k:
        raise FieldDomainError(f"Parts {parts} sum to {sum(parts)}, not {k}")


def _check_prime(p: int) -> None:
    if p not in SMALL_PRIMES:
        raise FieldDomainError(f"p must be a prime <= 64, got {p}")


def multinomial_mod_p(k: int, parts: list[int], p: int) -> int:
    """(k; parts) mod p by Lucas' theorem.

    Args:
        k: Top of the multinomial
        parts: Nonnegative parts summing to k
        p: Prime <= 64

    Returns:
        Residue in 0..p-1; zero as soon as some digit position carries

    Raises:
        FieldDomainError: If the parts do not sum to k or p is not a small prime
    """
    _check_parts(k, parts)
    _check_prime(p)
    k_digits = base_digits(k, p)
    part_digits = [base_digits(part, p) for part in parts]
    result = 1
    for pos, kd in enumerate(k_digits):
        digits = [pd[pos] if pos < len(pd) else 0 for pd in part_digits]
        if sum(digits) != kd:
            return 0
        term = math.factorial(kd)
        for d in digits:
            term //= math.factorial(d)
        result = result * term % p
        if result == 0:
            return 0
    return result


def multinomial_nonzero_mod2(k: int, parts: list[int]) -> bool:
    """Whether the parts' bits partition k's bits (carry-free addition)."""
    _check_parts(k, parts)
    acc = 0
    for part in parts:
        if acc & part:
            return False
        acc |= part
    return acc == k


@lru_cache(maxsize=None)
def _exponent_triples(s: int, t: int, k: int) -> tuple[ExponentTriple, ...]:
    modulus = (1 << t) - 1
    inv_half = pow(1 << (s - 1), -1, modulus)
    triples = []
    for u in range(k + 1):
        # 2^s u + 2^(s-1) v + k = ell * modulus, solved for v modulo 2^t - 1
        v = (-(k + (u << s)) * inv_half) % modulus
        while u + v <= k:
            weighted = (u << s) + (v << (s - 1)) + k
            ell = weighted // modulus
            if ell >= 1:
                triples.append(ExponentTriple(u, v, k - u - v, ell))
            v += modulus
    return tuple(triples)


def exponent_triples(s: int, t: int, k: int) -> list[ExponentTriple]:
    """All (u, v, w, ell) with u+v+w = k and (2^s+1)u + (2^(s-1)+1)v + w = ell(2^t-1), ell >= 1.

    Raises:
        FieldDomainError: If s < 1, t < 2 or k < 0
        ResourceGuardError: If t exceeds triples_max_t
    """
    if s < 1 or t < 2 or k < 0:
        raise FieldDomainError(f"exponent_triples needs s >= 1, t >= 2, k >= 0 (got s={s}, t={t}, k={k})")
    limit = get_settings().triples_max_t
    if t > limit:
        raise ResourceGuardError(f"exponent_triples refused for t = {t} > {limit}")
    return list(_exponent_triples(s, t, k))


def possible_ells(s: int, t: int, k: int) -> frozenset[int]:
    """Multipliers ell that can occur for k = 2^t - 3 or 2^t - 4 when s >= 3.

    Reducing the weighted sum modulo 2^(s-1) forces ell = 3 (resp. 4) mod 2^(s-1), and
    the size bound ell <= 2^s leaves two values.
    """
    if s < 3 or t < 2:
        raise FieldDomainError(f"ell pruning needs s >= 3 and t >= 2 (got s={s}, t={t})")
    base = {(1 << t) - 3: 3, (1 << t) - 4: 4}.get(k)
    if base is None:
        raise FieldDomainError(f"ell pruning covers k = 2^t - 3 and 2^t - 4 only, got k={k}")
    return frozenset({base, (1 << (s - 1)) + base})


def trinomial_field(t: int) -> FieldSpec:
    """The field F_{2^t} trinomial coefficients are computed in."""
    return make_field(t)


def top_coeff_combinatorial(s: int, t: int, alpha: FieldElement, k: int) -> FieldElement:
    """Coefficient of x^(2^t-1) in f^k mod (x^(2^t) - x), summed over exponent triples."""
    spec = trinomial_field(t)
    if not spec.contains(alpha):
        raise FieldDomainError(f"alpha = {alpha:x} is not in F_2^{t}")
    total = 0
    for triple in exponent_triples(s, t, k):
        if multinomial_nonzero_mod2(k, [triple.u, triple.v, triple.w]):
            total ^= spec.pow(alpha, triple.w)
    return total


def _check_regime(s: int, t: int) -> None:
    if not 3 <= s < t:
        raise FieldDomainError(f"Closed forms hold for 3 <= s < t, got s={s}, t={t}")


def _frobenius_sum(alpha: FieldElement, lo: int, hi: int, spec: FieldSpec) -> FieldElement:
    """sum_{i=lo}^{hi} alpha^(2^i); zero when hi < lo."""
    total = 0
    for i in range(lo, hi + 1):
        total ^= spec.frobenius(alpha, i)
    return total


def closed_form_2t3(s: int, t: int, alpha: FieldElement) -> FieldElement:
    """alpha^(2^t - 2^(t-s+2) - 3) (1 + sum_{i=2}^{t-s+1} alpha^(2^i)), the coefficient for k = 2^t - 3."""
    _check_regime(s, t)
    spec = trinomial_field(t)
    e1 = (1 << t) - (1 << (t - s + 2)) - 3
    return spec.mul(spec.pow(alpha, e1), 1 ^ _frobenius_sum(alpha, 2, t - s + 1, spec))


def closed_form_2t4(s: int, t: int, alpha: FieldElement) -> FieldElement:
    """The coefficient for k = 2^t - 4.

    alpha^(2^t - 2^(t-s+2) - 2^(t-s+1) - 4) (1 + S) + alpha^(2^t - 2^(t-s+2) - 4) S
    with S = sum_{i=2}^{t-s} alpha^(2^i).
    """
    _check_regime(s, t)
    spec = trinomial_field(t)
    e1 = (1 << t) - (1 << (t - s + 2)) - (1 << (t - s + 1)) - 4
    e2 = (1 << t) - (1 << (t - s + 2)) - 4
    partial = _frobenius_sum(alpha, 2, t - s, spec)
    return spec.mul(spec.pow(alpha, e1), 1 ^ partial) ^ spec.mul(spec.pow(alpha, e2), partial)


def sum_condition(s: int, t: int, alpha: FieldElement) -> bool:
    """Whether sum_{i=2}^{t-s+1} alpha^(2^i) = 1."""
    _check_regime(s, t)
    return _frobenius_sum(alpha, 2, t - s + 1, trinomial_field(t)) == 1


def simplified_2t4(s: int, t: int, alpha: FieldElement) -> FieldElement:
    """alpha^(2^t - 2^(t-s+2) + 2^(t-s+1) - 4), the k = 2^t - 4 coefficient under sum_condition."""
    _check_regime(s, t)
    e = (1 << t) - (1 << (t - s + 2)) + (1 << (t - s + 1)) - 4
    return trinomial_field(t).pow(alpha, e)


@lru_cache(maxsize=None)
def _digit_multinomials(p: int) -> IntArray:
    """table[kd, ud, vd] = (kd; ud, vd, kd-ud-vd) mod p, zero where ud + vd > kd."""
    table = np.zeros((p, p, p), dtype=np.int64)
    for kd in range(p):
        for ud in range(kd + 1):
            for vd in range(kd - ud + 1):
                table[kd, ud, vd] = math.comb(kd, ud) * math.comb(kd - ud, vd) % p
    table.setflags(write=False)
    return table


def multinomial_mod_p_grid(k: int, u: IntArray, v: IntArray, p: int) -> IntArray:
    """Vectorised (k; u, v, k-u-v) mod p over arrays of (u, v) with u + v <= k."""
    _check_prime(p)
    table = _digit_multinomials(p)
    u = u.copy()
    v = v.copy()
    w = k - u - v
    if (w < 0).any() or (u < 0).any() or (v < 0).any():
        raise FieldDomainError("Grid parts must be nonnegative and sum to k")
    result = np.ones_like(u)
    while k:
        kd = k % p
        ud, vd, wd = u % p, v % p, w % p
        carried = ud + vd + wd != kd
        result = np.where(carried, 0, result * table[kd, ud, vd] % p)
        k //= p
        u //= p
        v //= p
        w //= p
    return result


@lru_cache(maxsize=None)
def pascal_mod_p(n_max: int, p: int) -> IntArray:
    """Binomials C(n, j) mod p for 0 <= j <= n <= n_max, by Pascal accumulation."""
    table = np.zeros((n_max + 1, n_max + 1), dtype=np.int64)
    table[0, 0] = 1
    for n in range(1, n_max + 1):
        table[n, 0] = 1
        table[n, 1 : n + 1] = (table[n - 1, : n] + table[n - 1, 1 : n + 1]) % p
    table.setflags(write=False)
    return table


def multinomial_mod_p_dp(k: int, parts: list[int], p: int) -> int:
    """(k; parts) mod p as a product of Pascal-table binomials, independent of Lucas."""
    _check_parts(k, parts)
    if k > MAX_PASCAL:
        raise ResourceGuardError(f"Pascal oracle refused for k = {k} > {MAX_PASCAL}")
    # Table sizes are rounded to powers of two so nearby k share one cached table
    pascal = pascal_mod_p(1 << k.bit_length(), p)
    result = 1
    remaining = k
    for part in parts:
        result = result * int(pascal[remaining, part]) % p
        remaining -= part
    return result
