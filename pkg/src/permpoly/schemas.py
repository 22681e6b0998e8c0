"""Pydantic models for verdicts, classifier decisions and reports."""

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, Field, computed_field, model_validator


class Method(StrEnum):
    """Permutation tester that produced a verdict."""

    BRUTE = "brute"
    HERMITE = "hermite"
    WANLIDL = "wanlidl"
    ROOTS_OF_UNITY = "roots-of-unity"
    SUBFIELD_MAP = "subfield-map"
    REDUCTION = "reduction"


class FailedCondition(StrEnum):
    """Theorem condition a classifier rejected on."""

    T_PARITY = "t-parity"
    S_RANGE = "s-range"
    ALPHA_VALUE = "alpha-value"
    A_MEMBERSHIP = "a-membership"
    A_ZERO = "a-zero"


class ClassifierMode(StrEnum):
    """literal: theorem statements as written; canonical: exponents reduced by Frobenius first."""

    LITERAL = "literal"
    CANONICAL = "canonical"


class OracleName(StrEnum):
    """Ground-truth source for binomial enumeration."""

    AUTO = "auto"
    BRUTE = "brute"
    WANLIDL = "wanlidl"
    REDUCTION = "reduction"


class PermVerdict(BaseModel):
    """Bijective or not, with a re-checkable witness for negatives."""

    is_pp: bool = Field(..., description="Whether the polynomial permutes the field")
    method: Method = Field(..., description="Tester that produced the verdict")
    witness: dict[str, Any] | None = Field(default=None, description="Failure evidence; absent for PPs")


class ClassifierDecision(BaseModel):
    """Predicted PP-ness and the first theorem condition that failed."""

    is_pp: bool
    failed_condition: FailedCondition | None = None
    mode: ClassifierMode = ClassifierMode.CANONICAL

    @model_validator(mode="after")
    def verdict_matches_condition(self) -> "ClassifierDecision":
        """A decision is positive exactly when no condition failed."""
        if self.is_pp != (self.failed_condition is None):
            raise ValueError("is_pp must be true iff failed_condition is absent")
        return self


class ClassifierCheck(BaseModel):
    """Classifier decision for one input, optionally with an oracle verdict beside it."""

    input: dict[str, Any]
    decision: ClassifierDecision
    oracle: OracleName | None = None
    oracle_verdict: PermVerdict | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def agree(self) -> bool | None:
        """Whether decision and oracle match, None without an oracle."""
        if self.oracle_verdict is None:
            return None
        return self.decision.is_pp == self.oracle_verdict.is_pp


class FieldInfo(BaseModel):
    """Printable description of a FieldSpec."""

    n: int = Field(..., ge=1, le=32, description="Extension degree over F_2")
    modulus: str = Field(..., description="Modulus bits as lowercase hex")
    gamma: str = Field(..., description="Primitive element as lowercase hex")
    factorization: list[int] = Field(default_factory=list, description="Prime factors of 2^n - 1")
    tables: bool = Field(default=False, description="Whether log/antilog tables back the field")


class ReportCase(BaseModel):
    """One input of a suite with the verdicts recorded for it."""

    input: dict[str, Any]
    classifier_verdict: bool | None = None
    oracle_verdicts: dict[str, bool] = Field(default_factory=dict)
    agree: bool = True
    note: str | None = None

    @property
    def oracle_positive(self) -> bool | None:
        """First oracle verdict, or None when no oracle ran."""
        return next(iter(self.oracle_verdicts.values()), None)


class ReportSummary(BaseModel):
    """Aggregate counts over a report's cases."""

    total: int = 0
    disagreements: int = 0
    pp_count: int = 0
    elapsed_ms: float | None = None
    oracle: str | None = Field(default=None, description="Oracle that supplied ground truth")
    expected_pp_count: int | None = Field(default=None, description="Count predicted by the counting corollary")
    expectation_met: bool | None = None
    positives: list[dict[str, Any]] = Field(default_factory=list, description="Inputs judged PP")


class Report(BaseModel):
    """Machine-readable outcome of a suite, enumeration or audit."""

    suite: str
    params: dict[str, Any] = Field(default_factory=dict)
    cases: list[ReportCase] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)

    @property
    def passed(self) -> bool:
        """No disagreements and no missed count expectation."""
        return self.summary.disagreements == 0 and self.summary.expectation_met is not False
