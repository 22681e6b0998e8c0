"""Tests for the permutation testers."""

import pytest

from permpoly.errors import FieldDomainError, FieldMismatchError, ResourceGuardError
from permpoly.fieldcore import make_field
from permpoly.permtest import (
    WanLidlInstance,
    conditions_b_and_c,
    count_roots,
    cyclotomic_poly,
    get_tester,
    instantiate_tester,
    is_pp_brute,
    is_pp_hermite,
    is_pp_monomial,
    list_testers,
    roots_of_unity_check,
    unity_images,
    verify_witness,
    wan_lidl,
)
from permpoly.permtest.brute import BruteTester
from permpoly.polyring import SparsePoly, monomial, parse_poly
from permpoly.schemas import Method, PermVerdict
from permpoly.settings import clear_settings_cache


def setup_function() -> None:
    """Clear settings cache before each test."""
    clear_settings_cache()


class TestRegistry:
    """Tests for the tester registry."""

    def test_list_testers(self) -> None:
        """Test all built-in testers are registered."""
        names = list_testers()
        for name in ("brute", "hermite", "wanlidl", "roots-of-unity"):
            assert name in names

    def test_get_tester(self) -> None:
        """Test getting a tester by name."""
        assert get_tester("brute") == BruteTester

    def test_get_unknown_tester(self) -> None:
        """Test getting unknown tester raises error."""
        with pytest.raises(ValueError, match="Unknown tester"):
            get_tester("unknown")

    def test_instantiate_drops_none(self) -> None:
        """Test options left as None are not passed on."""
        tester = instantiate_tester("brute", d=None, r=None, workers=3)
        assert isinstance(tester, BruteTester)
        assert tester.workers == 3

    def test_instantiate_rejects_foreign_option(self) -> None:
        """Test an option the tester does not take raises ValueError."""
        with pytest.raises(ValueError, match="does not accept options"):
            instantiate_tester("hermite", workers=2)


class TestBrute:
    """Tests for exhaustive evaluation."""

    def test_dickson_permutes_f8(self) -> None:
        """Test x^5 + x^3 + x permutes F_8 (gcd(5, 63) = 1)."""
        verdict = is_pp_brute(parse_poly("5:1,3:1,1:1", make_field(3)))
        assert verdict.is_pp
        assert verdict.method == Method.BRUTE
        assert verdict.witness is None

    def test_dickson_fails_f16(self) -> None:
        """Test x^5 + x^3 + x does not permute F_16 (5 divides 255)."""
        assert not is_pp_brute(parse_poly("5:1,3:1,1:1", make_field(4))).is_pp

    def test_collision_witness(self) -> None:
        """Test x^2 + x collides at 0 and 1."""
        p = parse_poly("2:1,1:1", make_field(3))
        verdict = is_pp_brute(p)
        assert not verdict.is_pp
        assert verdict.witness == {"kind": "collision", "x1": "0", "x2": "1", "image": "0"}
        assert verify_witness(verdict, p)

    def test_workers_do_not_change_witness(self) -> None:
        """Test chunked parallel evaluation reports the same first collision."""
        p = monomial(7, 1, make_field(18))  # 7 divides 2^18 - 1
        serial = is_pp_brute(p, workers=1)
        parallel = is_pp_brute(p, workers=4)
        assert not serial.is_pp
        assert serial == parallel
        assert verify_witness(serial, p)

    def test_guard(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the brute-force size guard."""
        monkeypatch.setenv("PERMPOLY_BRUTE_MAX_DEGREE", "4")
        clear_settings_cache()
        with pytest.raises(ResourceGuardError):
            is_pp_brute(monomial(1, 1, make_field(5)))

    def test_field_mismatch(self) -> None:
        """Test passing a different field than the polynomial's raises."""
        with pytest.raises(FieldMismatchError):
            is_pp_brute(monomial(1, 1, make_field(3)), make_field(4))

    def test_tester_needs_polynomial(self) -> None:
        """Test the brute tester class refuses a missing polynomial."""
        with pytest.raises(ValueError, match="needs a polynomial"):
            BruteTester().check(None, make_field(3))


class TestHermite:
    """Tests for the Hermite-Dickson criterion."""

    def test_root_count_witness(self) -> None:
        """Test x^2 + x has two roots."""
        p = parse_poly("2:1,1:1", make_field(3))
        verdict = is_pp_hermite(p)
        assert not verdict.is_pp
        assert verdict.witness == {"kind": "root-count", "roots": 2}
        assert count_roots(p) == 2
        assert verify_witness(verdict, p)

    def test_top_coefficient_witness(self) -> None:
        """Test x^3 over F_16 first reaches x^15 at k = 5."""
        p = monomial(3, 1, make_field(4))
        verdict = is_pp_hermite(p)
        assert not verdict.is_pp
        assert verdict.witness == {"kind": "top-coefficient", "k": 5, "coefficient": "1"}
        assert verify_witness(verdict, p)

    def test_agrees_with_brute(self) -> None:
        """Test Hermite-Dickson agrees with brute force on every x^e + a*x over F_16."""
        spec = make_field(4)
        for e in range(2, 15):
            for a in (0, 1, 6):
                p = SparsePoly.from_terms({e: 1, 1: a}, spec)
                assert is_pp_hermite(p).is_pp == is_pp_brute(p).is_pp
                assert is_pp_hermite(p, skip_char_multiples=True).is_pp == is_pp_brute(p).is_pp

    def test_guard(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the Hermite size guard."""
        monkeypatch.setenv("PERMPOLY_HERMITE_MAX_DEGREE", "3")
        clear_settings_cache()
        with pytest.raises(ResourceGuardError):
            is_pp_hermite(monomial(1, 1, make_field(4)))


class TestWanLidl:
    """Tests for the cyclotomic criteria."""

    def test_monomial_law(self) -> None:
        """Test gcd(e, q - 1) = 1 decides monomials."""
        assert is_pp_monomial(3, 8)
        assert not is_pp_monomial(3, 16)
        assert not is_pp_monomial(0, 8)
        spec = make_field(5)
        for e in range(1, spec.q):
            assert is_pp_monomial(e, spec.q) == is_pp_brute(monomial(e, 1, spec)).is_pp

    def test_condition_a(self) -> None:
        """Test x^3 over F_16 fails the gcd condition."""
        spec = make_field(4)
        inst = WanLidlInstance(r=3, d=1, f=SparsePoly.one(spec))
        assert cyclotomic_poly(inst) == monomial(3, 1, spec)
        verdict = wan_lidl(inst)
        assert not verdict.is_pp
        assert verdict.witness == {"kind": "condition", "condition": "a", "indices": [], "gcd": 3}
        assert verify_witness(verdict, None, instance=inst)

    def test_condition_b(self) -> None:
        """Test f(y) = y + 1 vanishes at the root of unity 1."""
        spec = make_field(6)
        inst = WanLidlInstance(r=1, d=7, f=parse_poly("1:1,0:1", spec))
        verdict = wan_lidl(inst)
        assert not verdict.is_pp
        assert verdict.witness is not None
        assert verdict.witness["condition"] == "b"
        assert verdict.witness["indices"] == [0]
        assert verify_witness(verdict, None, instance=inst)

    def test_agrees_with_brute_on_binomials(self) -> None:
        """Test the criterion agrees with brute force on x^10 + a*x over F_64 for every a."""
        spec = make_field(6)
        for a in spec.elements():
            inst = WanLidlInstance(r=1, d=7, f=SparsePoly.from_terms({1: 1, 0: a}, spec))
            g = cyclotomic_poly(inst)
            assert g.terms.get(10) == 1
            verdict = wan_lidl(inst)
            assert verdict.is_pp == is_pp_brute(g).is_pp
            assert verify_witness(verdict, None, instance=inst)
            assert roots_of_unity_check(inst) == conditions_b_and_c(inst)

    def test_roots_of_unity_tester(self) -> None:
        """Test the roots-of-unity tester matches Wan-Lidl through the registry."""
        spec = make_field(4)
        for a in spec.elements():
            inner = SparsePoly.from_terms({1: 1, 0: a}, spec)
            inst = WanLidlInstance(r=1, d=3, f=inner)
            roots = instantiate_tester("roots-of-unity", d=3, r=1, inner=inner).check(None, spec)
            criterion = instantiate_tester("wanlidl", d=3, r=1, inner=inner).check(cyclotomic_poly(inst), spec)
            assert roots.is_pp == criterion.is_pp
            assert verify_witness(roots, None, instance=inst)
            assert len(unity_images(inst)) == 3

    def test_tester_parses_inner_text(self) -> None:
        """Test the inner polynomial may be given as text."""
        spec = make_field(4)
        verdict = get_tester("wanlidl")(d=3, r=1, inner="1:1,0:1").check(None, spec)
        assert not verdict.is_pp

    def test_tester_rejects_other_polynomial(self) -> None:
        """Test a polynomial that is not the configured instance raises."""
        spec = make_field(4)
        tester = get_tester("wanlidl")(d=3, r=1, inner="1:1,0:2")
        with pytest.raises(FieldDomainError, match="is not x\\^r"):
            tester.check(monomial(3, 1, spec), spec)

    def test_tester_needs_options(self) -> None:
        """Test a cyclotomic tester without d raises."""
        with pytest.raises(FieldDomainError, match="needs d"):
            get_tester("wanlidl")().check(None, make_field(4))

    def test_instance_validation(self) -> None:
        """Test d must divide q - 1 and r must be positive."""
        spec = make_field(4)
        with pytest.raises(FieldDomainError):
            WanLidlInstance(r=1, d=4, f=SparsePoly.one(spec))
        with pytest.raises(FieldDomainError):
            WanLidlInstance(r=0, d=3, f=SparsePoly.one(spec))


class TestWitness:
    """Tests for independent witness checks."""

    def test_positive_verifies(self) -> None:
        """Test positive verdicts verify trivially."""
        assert verify_witness(PermVerdict(is_pp=True, method=Method.BRUTE), None)

    def test_tampered_collision(self) -> None:
        """Test a fabricated collision does not verify."""
        p = parse_poly("2:1,1:1", make_field(3))
        fake = PermVerdict(
            is_pp=False,
            method=Method.BRUTE,
            witness={"kind": "collision", "x1": "2", "x2": "3", "image": "0"},
        )
        assert not verify_witness(fake, p)

    def test_missing_context(self) -> None:
        """Test witnesses cannot verify without what they refer to."""
        condition = PermVerdict(
            is_pp=False,
            method=Method.WANLIDL,
            witness={"kind": "condition", "condition": "a", "indices": [], "gcd": 3},
        )
        assert not verify_witness(condition, None)
        assert not verify_witness(PermVerdict(is_pp=False, method=Method.BRUTE), monomial(1, 1, make_field(3)))
