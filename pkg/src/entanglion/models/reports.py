"""Models for inequality reports, tightness comparisons and random-suite summaries."""

import math
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from entanglion.config import VIOLATION_TOL
from entanglion.models.common import ReportEnvelope
from entanglion.models.measures import MeasureName


class TheoremId(StrEnum):
    """Identifiers of every relation the library evaluates."""

    BASELINE_MONO = "baseline_mono"
    BASELINE_POLY = "baseline_poly"
    THM1 = "thm1"
    THM2 = "thm2"
    THM3 = "thm3"
    THM4 = "thm4"
    THM5 = "thm5"
    THM6 = "thm6"
    THM7 = "thm7"
    THM8 = "thm8"
    CKW = "ckw"


class Verdict(StrEnum):
    """Outcome of one inequality check."""

    HOLDS = "holds"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"
    CONDITION_FAILED = "condition_failed"


class RhsTerm(BaseModel):
    """One weighted term ``weight * E_j^alpha`` of a bound."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0, description="Label j of the pair (focus, B_j)")
    exponent: int = Field(..., ge=0)
    weight: float
    value: float = Field(..., description="E_j^alpha")
    term: float


class ConditionVerdict(BaseModel):
    """A side condition of a theorem and whether it is met."""

    model_config = ConfigDict(frozen=True)

    condition: str
    satisfied: bool
    detail: str | None = None


class InequalityReport(BaseModel):
    """Both sides of one inequality at one alpha, with its verdict."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    theorem_id: TheoremId
    measure: MeasureName
    alpha: float
    lhs: float
    rhs_terms: list[RhsTerm]
    rhs: float
    margin: float | None
    holds: bool | None
    verdict: Verdict
    uncertainty: float = Field(0.0, ge=0)
    condition_verdicts: list[ConditionVerdict] = Field(default_factory=list)
    split: int | None = None
    effective_terms: int = Field(..., ge=0)
    flags: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_consistency(self) -> "InequalityReport":
        """Check that rhs is the sum of its terms and that holds agrees with the margin."""
        total = math.fsum(t.term for t in self.rhs_terms)
        if math.isfinite(self.rhs) and not math.isclose(
            self.rhs, total, rel_tol=1e-12, abs_tol=1e-12
        ):
            msg = f"rhs {self.rhs} differs from the sum of its terms {total}"
            raise ValueError(msg)
        if self.holds is not None:
            if self.margin is None:
                msg = "A report with a holds value needs a margin"
                raise ValueError(msg)
            if self.holds != (self.margin >= -VIOLATION_TOL):
                msg = f"holds={self.holds} contradicts margin {self.margin}"
                raise ValueError(msg)
        if (self.verdict == Verdict.CONDITION_FAILED) != (self.holds is None):
            msg = "holds must be None exactly when the side conditions fail"
            raise ValueError(msg)
        return self

    @property
    def conditions_met(self) -> bool:
        """True when every recorded side condition is satisfied."""
        return all(c.satisfied for c in self.condition_verdicts)


class TightnessVerdict(BaseModel):
    """Ordering between the right-hand sides of two bounds at one alpha."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    tighter: TheoremId
    looser: TheoremId
    gap: float | None
    holds: bool | None


class SweepRow(BaseModel):
    """One alpha of a sweep; ``rhs_thm2`` is None when its condition fails."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    lhs: float
    rhs_baseline: float
    rhs_thm1: float
    rhs_thm2: float | None
    margin: float


class TheoremTally(BaseModel):
    """Counts of verdicts for one theorem at one alpha (and split) across a random suite."""

    theorem_id: TheoremId
    alpha: float
    split: int | None = None
    evaluated: int = 0
    holds: int = 0
    violated: int = 0
    inconclusive: int = 0
    condition_failed: int = 0
    worst_margin: float | None = None

    def add(self, report: InequalityReport) -> None:
        """Fold one report into the tally."""
        self.evaluated += 1
        match report.verdict:
            case Verdict.HOLDS:
                self.holds += 1
            case Verdict.VIOLATED:
                self.violated += 1
            case Verdict.INCONCLUSIVE:
                self.inconclusive += 1
            case Verdict.CONDITION_FAILED:
                self.condition_failed += 1
                return
        if report.margin is not None and (
            self.worst_margin is None or report.margin < self.worst_margin
        ):
            self.worst_margin = report.margin

    @computed_field  # type: ignore[prop-decorator]
    @property
    def condition_incidence(self) -> float:
        """Fraction of samples whose side conditions held."""
        if self.evaluated == 0:
            return 0.0
        return (self.evaluated - self.condition_failed) / self.evaluated


class SuiteSummary(BaseModel):
    """Summary of a random property suite."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    count: int = Field(..., ge=1)
    qubits: int = Field(..., ge=3)
    seed: int = Field(..., ge=0)
    tallies: list[TheoremTally]
    unexpected_violations: int = Field(0, ge=0)


def validate_report_list(reports: list[dict[str, Any]]) -> list[InequalityReport]:
    """Validate a list of report dicts into InequalityReport objects, raising ValidationError."""
    return [InequalityReport.model_validate(item) for item in reports]


class CheckEnvelope(ReportEnvelope[InequalityReport]):
    """Envelope of a check run: the reports plus the tightness orderings between them."""

    tightness: list[TightnessVerdict] = Field(default_factory=list)
