"""Tests for the Lucas coefficient engine."""

import numpy as np
import pytest

from permpoly.errors import FieldDomainError, ResourceGuardError
from permpoly.fieldcore import make_field
from permpoly.lucas import (
    ExponentTriple,
    base_digits,
    closed_form_2t3,
    closed_form_2t4,
    exponent_triples,
    multinomial_mod_p,
    multinomial_mod_p_dp,
    multinomial_mod_p_grid,
    multinomial_nonzero_mod2,
    possible_ells,
    simplified_2t4,
    sum_condition,
    top_coeff_combinatorial,
    wt,
)
from permpoly.polyring import SparsePoly, coeff_top, poly_pow_mod
from permpoly.settings import clear_settings_cache


def setup_function() -> None:
    """Clear settings cache before each test."""
    clear_settings_cache()


def _trinomial(s: int, t: int, alpha: int) -> SparsePoly:
    terms: dict[int, int] = {}
    for e, c in (((1 << s) + 1, 1), ((1 << (s - 1)) + 1, 1), (1, alpha)):
        terms[e] = terms.get(e, 0) ^ c
    return SparsePoly.from_terms(terms, make_field(t))


class TestMultinomials:
    """Tests for multinomials modulo small primes."""

    def test_digits_and_weight(self) -> None:
        """Test base-p digits and Hamming weight."""
        assert base_digits(10, 3) == [1, 0, 1]
        assert base_digits(0, 2) == []
        assert wt(0b1011) == 3

    def test_carry_gives_zero(self) -> None:
        """Test (4; 2, 2, 0) is even."""
        assert multinomial_mod_p(4, [2, 2, 0], 2) == 0
        assert not multinomial_nonzero_mod2(4, [2, 2, 0])

    def test_known_residues(self) -> None:
        """Test small multinomials against their factorial values."""
        assert multinomial_mod_p(3, [1, 1, 1], 5) == 1  # 6 mod 5
        assert multinomial_mod_p(6, [3, 2, 1], 7) == 4  # 60 mod 7
        assert multinomial_nonzero_mod2(13, [8, 0, 5])

    def test_lucas_matches_pascal(self) -> None:
        """Test Lucas and the Pascal-table oracle agree on every composition of small k."""
        for p in (2, 3, 5):
            for k in range(0, 25):
                for u in range(k + 1):
                    for v in range(k - u + 1):
                        parts = [u, v, k - u - v]
                        assert multinomial_mod_p(k, parts, p) == multinomial_mod_p_dp(k, parts, p)

    def test_grid_matches_scalar(self) -> None:
        """Test the vectorised grid agrees with the scalar computation."""
        k = 40
        uu, vv = np.meshgrid(np.arange(k + 1), np.arange(k + 1), indexing="ij")
        mask = uu + vv <= k
        u, v = uu[mask].astype(np.int64), vv[mask].astype(np.int64)
        for p in (2, 3, 7):
            grid = multinomial_mod_p_grid(k, u, v, p)
            expected = [multinomial_mod_p(k, [a, b, k - a - b], p) for a, b in zip(u.tolist(), v.tolist(), strict=True)]
            assert grid.tolist() == expected

    def test_grid_rejects_overflow(self) -> None:
        """Test grid parts exceeding k raise."""
        with pytest.raises(FieldDomainError):
            multinomial_mod_p_grid(3, np.array([2]), np.array([2]), 2)

    def test_errors(self) -> None:
        """Test malformed parts and non-prime moduli raise."""
        with pytest.raises(FieldDomainError, match="sum to"):
            multinomial_mod_p(3, [1, 1], 2)
        with pytest.raises(FieldDomainError, match="Negative"):
            multinomial_mod_p(1, [2, -1], 2)
        with pytest.raises(FieldDomainError, match="prime"):
            multinomial_mod_p(4, [2, 2], 4)
        with pytest.raises(ResourceGuardError):
            multinomial_mod_p_dp(5000, [5000], 2)


class TestExponentTriples:
    """Tests for the exponent-matching triples."""

    def test_smallest_case(self) -> None:
        """Test s=1, t=2, k=1 has the single triple (1, 0, 0) with ell = 1."""
        assert exponent_triples(1, 2, 1) == [ExponentTriple(1, 0, 0, 1)]

    def test_triples_satisfy_equation(self) -> None:
        """Test every triple sums to k and lands on a positive multiple of 2^t - 1."""
        s, t = 2, 5
        modulus = (1 << t) - 1
        for k in (1, 7, 29, 30):
            for u, v, w, ell in exponent_triples(s, t, k):
                assert u + v + w == k
                assert ((1 << s) + 1) * u + ((1 << (s - 1)) + 1) * v + w == ell * modulus
                assert ell >= 1

    def test_triples_are_complete(self) -> None:
        """Test no solution is missed on a small grid."""
        s, t, k = 3, 4, 13
        modulus = (1 << t) - 1
        found = {(x.u, x.v, x.w) for x in exponent_triples(s, t, k)}
        expected = {
            (u, v, k - u - v)
            for u in range(k + 1)
            for v in range(k - u + 1)
            if (9 * u + 5 * v + (k - u - v)) % modulus == 0 and 9 * u + 5 * v + (k - u - v) > 0
        }
        assert found == expected

    def test_possible_ells(self) -> None:
        """Test ell pruning for k = 2^t - 3 and 2^t - 4."""
        assert possible_ells(3, 5, 29) == {3, 7}
        assert possible_ells(4, 6, 60) == {4, 12}
        for s, t in ((3, 5), (4, 6), (3, 7)):
            for k in ((1 << t) - 3, (1 << t) - 4):
                assert {x.ell for x in exponent_triples(s, t, k)} <= possible_ells(s, t, k)

    def test_possible_ells_errors(self) -> None:
        """Test pruning only covers s >= 3 and the two k values."""
        with pytest.raises(FieldDomainError):
            possible_ells(2, 5, 29)
        with pytest.raises(FieldDomainError):
            possible_ells(3, 5, 30)

    def test_domain_and_guard(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test invalid parameters and the t guard."""
        with pytest.raises(FieldDomainError):
            exponent_triples(0, 4, 3)
        monkeypatch.setenv("PERMPOLY_TRIPLES_MAX_T", "4")
        clear_settings_cache()
        with pytest.raises(ResourceGuardError):
            exponent_triples(1, 5, 3)


class TestTopCoefficient:
    """Tests for the x^(2^t-1) coefficient of trinomial powers."""

    @pytest.mark.parametrize(("s", "t"), [(1, 3), (2, 4), (3, 4), (2, 5)])
    def test_matches_direct_powering(self, s: int, t: int) -> None:
        """Test the combinatorial sum equals the coefficient of the actual power."""
        spec = make_field(t)
        for alpha in (0, 1, spec.gamma, spec.q - 1):
            f = _trinomial(s, t, alpha)
            for k in range(1, spec.q - 1):
                assert top_coeff_combinatorial(s, t, alpha, k) == coeff_top(poly_pow_mod(f, k))

    def test_alpha_outside_field(self) -> None:
        """Test alpha must lie in F_{2^t}."""
        with pytest.raises(FieldDomainError):
            top_coeff_combinatorial(1, 4, 16, 3)

    def test_hand_computed_value(self) -> None:
        """Test s=3, t=4 gives alpha^5 + alpha^9 at k=13 and 1 at k=12."""
        spec = make_field(4)
        for alpha in spec.elements():
            expected = spec.pow(alpha, 5) ^ spec.pow(alpha, 9)
            assert top_coeff_combinatorial(3, 4, alpha, 13) == expected
            assert closed_form_2t3(3, 4, alpha) == expected
            assert closed_form_2t4(3, 4, alpha) == top_coeff_combinatorial(3, 4, alpha, 12) == 1

    @pytest.mark.parametrize(("s", "t"), [(3, 5), (3, 6), (4, 6), (4, 7)])
    def test_closed_forms(self, s: int, t: int) -> None:
        """Test both closed forms against the combinatorial sum for every alpha."""
        spec = make_field(t)
        for alpha in spec.elements():
            assert closed_form_2t3(s, t, alpha) == top_coeff_combinatorial(s, t, alpha, (1 << t) - 3)
            assert closed_form_2t4(s, t, alpha) == top_coeff_combinatorial(s, t, alpha, (1 << t) - 4)

    @pytest.mark.parametrize(("s", "t"), [(3, 5), (3, 6), (4, 7)])
    def test_simplified_form(self, s: int, t: int) -> None:
        """Test the simplified k = 2^t - 4 coefficient wherever the sum condition holds."""
        spec = make_field(t)
        for alpha in spec.elements():
            if sum_condition(s, t, alpha):
                assert closed_form_2t4(s, t, alpha) == simplified_2t4(s, t, alpha)

    def test_regime(self) -> None:
        """Test closed forms need 3 <= s < t."""
        with pytest.raises(FieldDomainError):
            closed_form_2t3(2, 5, 1)
        with pytest.raises(FieldDomainError):
            closed_form_2t4(5, 5, 1)
