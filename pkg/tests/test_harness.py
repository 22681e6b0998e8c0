"""Tests for enumeration, auditing, suites and report rendering."""

import json

import pytest

from permpoly.classify import BinomialParams
from permpoly.errors import ResourceGuardError
from permpoly.fieldcore import make_field
from permpoly.harness import (
    ReportBuilder,
    audit_literal,
    binomial_verdict,
    corollary_count,
    enumerate_binomials,
    get_suite,
    list_suites,
    map_cases,
    resolve_oracle,
    verify_suite,
    verify_trith,
)
from permpoly.harness.reduction import build_cells, sample_a_values
from permpoly.reporting import build_table, csv_columns, render_csv, render_json
from permpoly.schemas import Method, OracleName, Report, ReportCase
from permpoly.settings import ProfileBounds, clear_settings_cache


def setup_function() -> None:
    """Clear settings cache before each test."""
    clear_settings_cache()


class TestRunner:
    """Tests for case mapping and report building."""

    def test_map_cases_preserves_order(self) -> None:
        """Test parallel mapping keeps input order."""
        assert map_cases(lambda x: x * x, range(20), workers=4) == [x * x for x in range(20)]
        assert map_cases(str, [3, 1], workers=1) == ["3", "1"]

    def test_builder_summary(self) -> None:
        """Test counts, positives and expectation."""
        builder = ReportBuilder("demo", params={"k": 1}, oracle="brute")
        builder.add(ReportCase(input={"a": "1"}, classifier_verdict=False, oracle_verdicts={"brute": False}))
        builder.add(ReportCase(input={"a": "2"}, classifier_verdict=True, oracle_verdicts={"brute": True}))
        builder.add(
            ReportCase(input={"a": "3"}, classifier_verdict=True, oracle_verdicts={"brute": False}, agree=False)
        )
        report = builder.build(expected_pp_count=1)
        assert report.summary.total == 3
        assert report.summary.disagreements == 1
        assert report.summary.pp_count == 1
        assert report.summary.positives == [{"a": "2"}]
        assert report.summary.expectation_met is True
        assert report.summary.oracle == "brute"
        assert not report.passed

    def test_builder_check(self) -> None:
        """Test property checks count as classifier-negative cases."""
        builder = ReportBuilder("demo")
        builder.check({"property": "x"}, True)
        builder.check({"property": "y"}, False, note="broken")
        report = builder.build(expected_pp_count=3)
        assert report.summary.pp_count == 0
        assert report.summary.disagreements == 1
        assert report.summary.expectation_met is False
        assert report.cases[1].note == "broken"


class TestOracles:
    """Tests for oracle routing and binomial verdicts."""

    def test_corollary_count(self) -> None:
        """Test the predicted number of PP binomials."""
        assert corollary_count(1, 2) == 0
        assert corollary_count(1, 3) == 14
        assert corollary_count(2, 5) == 62
        assert corollary_count(3, 3) is None

    def test_auto_routing(self) -> None:
        """Test auto picks brute, then Wan-Lidl, then the reduction."""
        assert resolve_oracle("auto", 6) == OracleName.BRUTE
        assert resolve_oracle("auto", 20, candidates=1 << 10) == OracleName.WANLIDL
        assert resolve_oracle("auto", 30) == OracleName.WANLIDL
        assert resolve_oracle("auto", 40) == OracleName.REDUCTION

    def test_explicit_oracle_guards(self) -> None:
        """Test explicit oracles refuse fields they cannot handle."""
        assert resolve_oracle("reduction", 6) == OracleName.REDUCTION
        with pytest.raises(ResourceGuardError):
            resolve_oracle("brute", 30)
        with pytest.raises(ResourceGuardError):
            resolve_oracle(OracleName.WANLIDL, 40)
        with pytest.raises(ValueError):
            resolve_oracle("psychic", 6)

    def test_oracles_agree(self) -> None:
        """Test brute, Wan-Lidl and reduction verdicts coincide for s=1, t=3."""
        small = make_field(6)
        for a in range(1, small.q):
            params = BinomialParams(s=1, t=3, a=a, field=small)
            verdicts = {oracle: binomial_verdict(params, oracle) for oracle in OracleName if oracle != "auto"}
            assert len({v.is_pp for v in verdicts.values()}) == 1
            assert verdicts[OracleName.REDUCTION].method == Method.REDUCTION

    def test_reduction_witnesses(self) -> None:
        """Test the reduction names a subfield element or the reduced trinomial."""
        degenerate = binomial_verdict(BinomialParams(s=1, t=3, a=1), OracleName.REDUCTION)
        assert degenerate.witness == {"kind": "subfield-element", "condition": "b"}
        small = make_field(6)
        negatives = [
            binomial_verdict(BinomialParams(s=1, t=3, a=a, field=small), OracleName.REDUCTION)
            for a in range(1, small.q)
        ]
        reduced = [v for v in negatives if v.witness and v.witness["kind"] == "reduced-trinomial"]
        assert reduced
        assert all(v.witness is not None and v.witness["trinomial"]["kind"] == "collision" for v in reduced)


class TestEnumerate:
    """Tests for binomial enumeration."""

    @pytest.mark.parametrize(("s", "t", "expected"), [(1, 1, 2), (2, 1, 2), (1, 2, 0), (1, 3, 14)])
    def test_counts(self, s: int, t: int, expected: int) -> None:
        """Test PP counts match the prediction and the classifier never disagrees."""
        report = enumerate_binomials(s, t, workers=2)
        assert report.suite == "enumerate"
        assert report.summary.total == (1 << (2 * t)) - 1
        assert report.summary.pp_count == expected
        assert report.summary.expectation_met is True
        assert report.summary.disagreements == 0
        assert report.params["oracle"] == "brute"

    def test_positives_are_cube_root_cosets(self) -> None:
        """Test the PP a's for s=1, t=1 are the primitive cube roots of unity."""
        report = enumerate_binomials(1, 1, oracle="wanlidl", workers=1)
        assert [case["a"] for case in report.summary.positives] == ["2", "3"]
        assert report.summary.oracle == "wanlidl"

    def test_no_prediction_beyond_s_two(self) -> None:
        """Test s=3 reports no expected count."""
        report = enumerate_binomials(3, 1, workers=1)
        assert report.summary.expected_pp_count is None
        assert report.summary.expectation_met is None
        assert report.summary.disagreements == 0

    def test_json_stable_across_workers(self) -> None:
        """Test the rendered report does not depend on the worker count."""
        serial = render_json(enumerate_binomials(1, 3, oracle="brute", workers=1))
        parallel = render_json(enumerate_binomials(1, 3, oracle="brute", workers=4))
        assert serial == parallel

    def test_guard(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the enumeration refuses oversized fields."""
        monkeypatch.setenv("PERMPOLY_BRUTE_MAX_DEGREE", "4")
        clear_settings_cache()
        with pytest.raises(ResourceGuardError):
            enumerate_binomials(1, 3)


class TestTrithAndAudit:
    """Tests for the trinomial grid and the literal-vs-canonical audit."""

    def test_trith_grid(self) -> None:
        """Test the trinomial grid agrees and finds the expected PPs."""
        report = verify_trith(3, 3, workers=2)
        assert report.passed
        positives = {(p["s"], p["t"], p["alpha"]) for p in report.summary.positives}
        assert (1, 3, "1") in positives
        assert (2, 3, "1") in positives
        assert (3, 3, "1") not in positives
        assert all(alpha == "1" for _, _, alpha in positives)

    def test_trith_guard(self) -> None:
        """Test t_max beyond trith_max_t raises."""
        with pytest.raises(ResourceGuardError):
            verify_trith(1, 12)

    def test_audit_finds_canonical_positives(self) -> None:
        """Test the audit lists s > 2 inputs that literal mode rejects but which permute."""
        report = audit_literal(4, 3, workers=1)
        assert report.suite == "audit"
        assert report.summary.disagreements == 0
        trinomials = [c for c in report.cases if c.input["family"] == "trinomial"]
        assert {"family": "trinomial", "s": 4, "t": 3, "alpha": "1"} in [c.input for c in trinomials]
        for case in report.cases:
            assert case.oracle_verdicts["literal"] is False
            assert case.classifier_verdict is True


class TestSuites:
    """Tests for the suite registry and small suite runs."""

    def test_registry(self) -> None:
        """Test every suite is registered."""
        for name in ("coeffs", "fieldaxioms", "lucas", "membership", "permtesters", "reduction", "trith"):
            assert name in list_suites()
        with pytest.raises(ValueError, match="Unknown suite"):
            get_suite("nope")

    @pytest.mark.parametrize(
        ("name", "bounds"),
        [
            ("trith", ProfileBounds(max_t=3)),
            ("coeffs", ProfileBounds(coeff_max_t=4, closed_form_max_t=5, exhaustive_alpha_max_t=5)),
            ("lucas", ProfileBounds(max_k=40)),
            ("fieldaxioms", ProfileBounds(field_max_degree=6)),
            ("permtesters", ProfileBounds(tester_max_degree=4, random_polys=5)),
            ("membership", ProfileBounds(max_t=3)),
            ("reduction", ProfileBounds(max_n=8)),
        ],
    )
    def test_small_runs_pass(self, name: str, bounds: ProfileBounds) -> None:
        """Test each suite passes on reduced bounds."""
        report = verify_suite(name, bounds, workers=2)
        assert report.suite == name
        assert report.summary.total > 0
        assert report.passed, [c.input for c in report.cases if not c.agree]

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["trith", "coeffs", "lucas", "fieldaxioms", "permtesters", "membership"])
    def test_ci_profile(self, name: str) -> None:
        """Test each suite passes at the ci profile."""
        assert verify_suite(name).passed

    def test_reduction_cells(self) -> None:
        """Test the grid covers every n = 2^s * t <= max_n."""
        cells = build_cells(ProfileBounds(max_n=8))
        assert {(c.s, c.t) for c in cells} == {(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)}
        assert all(c.exhaustive and c.brute for c in cells)
        assert next(c for c in cells if (c.s, c.t) == (1, 3)).a_values == tuple(range(1, 64))

    def test_exhaustive_cells_run_brute_force(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test exhaustive cells up to n = 20 keep brute force even over the budget."""
        monkeypatch.setenv("PERMPOLY_REDUCTION_BRUTE_BUDGET", "1")
        clear_settings_cache()
        cells = {(c.s, c.t): c for c in build_cells(ProfileBounds(max_n=20))}
        assert cells[(2, 5)].exhaustive and cells[(2, 5)].brute
        assert all(c.brute for c in cells.values() if c.exhaustive)
        assert not any(c.brute for c in cells.values() if not c.exhaustive)

    def test_sampled_a_values(self) -> None:
        """Test sampling is deterministic and includes 1."""
        first = sample_a_values(1, 9, 32, seed=7)
        assert first == sample_a_values(1, 9, 32, seed=7)
        assert 1 in first
        assert len(first) == 32
        assert all(0 < a < 1 << 18 for a in first)


def _demo_report() -> Report:
    builder = ReportBuilder("demo", params={"s": 1}, oracle="brute")
    builder.add(ReportCase(input={"a": "2"}, classifier_verdict=True, oracle_verdicts={"brute": True}))
    builder.add(ReportCase(input={"a": "1"}, classifier_verdict=False, oracle_verdicts={"brute": True}, agree=False))
    return builder.build()


class TestRendering:
    """Tests for JSON, CSV and table output."""

    def test_json_omits_timing(self) -> None:
        """Test elapsed time only appears with timing on."""
        report = _demo_report()
        plain = json.loads(render_json(report))
        assert "elapsed_ms" not in plain["summary"]
        assert plain["summary"]["disagreements"] == 1
        assert "elapsed_ms" in json.loads(render_json(report, timing=True))["summary"]
        assert render_json(report).endswith("}\n")

    def test_csv(self) -> None:
        """Test CSV columns and cell formatting."""
        report = _demo_report()
        assert csv_columns(report) == ["input.a", "classifier", "oracle.brute", "agree", "note"]
        lines = render_csv(report).splitlines()
        assert lines[0] == "input.a,classifier,oracle.brute,agree,note"
        assert lines[1] == "2,true,true,true,"
        assert lines[2] == "1,false,true,false,"

    def test_table_puts_disagreements_first(self) -> None:
        """Test the table lists the disagreement before the agreeing case."""
        table = build_table(_demo_report())
        assert table.row_count == 2
        first_column = list(table.columns[0].cells)
        assert first_column == ["1", "2"]
