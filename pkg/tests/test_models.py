"""Tests for pydantic models."""

import math
from typing import Any

import pytest
from pydantic import ValidationError

from entanglion.models import (
    AlphaGrid,
    Command,
    ConditionVerdict,
    InequalityReport,
    MeasureMethod,
    MeasureName,
    MeasureRecord,
    MeasureValue,
    MixedStateDocument,
    PureStateDocument,
    QuotedProfileSpec,
    ReportEnvelope,
    RhsTerm,
    RunSpec,
    SweepRow,
    TheoremId,
    TheoremTally,
    Verdict,
    validate_measure_list,
    validate_report_list,
    validate_state_document,
)


def _report(**overrides: Any) -> dict[str, Any]:
    base: dict[str, Any] = {
        "theorem_id": "thm1",
        "measure": "lcren",
        "alpha": 3.0,
        "lhs": 1.0,
        "rhs_terms": [
            {"index": 1, "exponent": 0, "weight": 1.0, "value": 0.5, "term": 0.5},
            {"index": 2, "exponent": 1, "weight": 1.5, "value": 0.2, "term": 0.3},
        ],
        "rhs": 0.8,
        "margin": 0.2,
        "holds": True,
        "verdict": "holds",
        "effective_terms": 2,
    }
    return base | overrides


class TestInequalityReport:
    """Test cases for InequalityReport class."""

    def test_valid_report(self) -> None:
        """Test validation of a consistent report."""
        report = InequalityReport.model_validate(_report())
        assert report.verdict == Verdict.HOLDS
        assert report.conditions_met

    def test_rhs_must_match_terms(self) -> None:
        """Test that rhs must equal the sum of its terms."""
        with pytest.raises(ValidationError, match="sum of its terms"):
            InequalityReport.model_validate(_report(rhs=0.9))

    def test_holds_must_match_margin(self) -> None:
        """Test that holds=True with a negative margin is rejected."""
        with pytest.raises(ValidationError, match="contradicts"):
            InequalityReport.model_validate(_report(margin=-0.5))

    def test_condition_failed_needs_null_holds(self) -> None:
        """Test that a failed condition must leave holds unset."""
        with pytest.raises(ValidationError, match="exactly when"):
            InequalityReport.model_validate(_report(verdict="condition_failed"))

    def test_condition_failed_report(self) -> None:
        """Test a report whose side condition failed."""
        report = InequalityReport.model_validate(
            _report(
                verdict="condition_failed",
                holds=None,
                condition_verdicts=[{"condition": "dominates_tail_sum[0]", "satisfied": False}],
            )
        )
        assert not report.conditions_met

    def test_infinite_values_serialize(self) -> None:
        """Test that infinite sides survive JSON serialization."""
        report = InequalityReport.model_validate(
            _report(lhs=math.inf, rhs_terms=[], rhs=0.0, margin=None, holds=None,
                    verdict="condition_failed", effective_terms=0)
        )  # fmt: skip
        assert '"lhs":Infinity' in report.model_dump_json()

    def test_validate_report_list(self) -> None:
        """Test validating a list of report dicts."""
        assert len(validate_report_list([_report(), _report(alpha=4.0)])) == 2


class TestTheoremTally:
    """Test cases for TheoremTally class."""

    def test_add(self) -> None:
        """Test folding reports into a tally."""
        tally = TheoremTally(theorem_id=TheoremId.THM1, alpha=3.0)
        tally.add(InequalityReport.model_validate(_report()))
        violated = _report(margin=-0.1, holds=False, verdict="violated")
        tally.add(InequalityReport.model_validate(violated))
        tally.add(InequalityReport.model_validate(_report(holds=None, verdict="condition_failed")))
        counts = (tally.evaluated, tally.holds, tally.violated, tally.condition_failed)
        assert counts == (3, 1, 1, 1)
        assert tally.worst_margin == pytest.approx(-0.1)
        assert tally.condition_incidence == pytest.approx(2 / 3)

    def test_dump_carries_split_and_incidence(self) -> None:
        """Test that the split and the condition incidence are serialized."""
        tally = TheoremTally(theorem_id=TheoremId.THM3, alpha=3.0, split=0)
        tally.add(InequalityReport.model_validate(_report(holds=None, verdict="condition_failed")))
        dumped = tally.model_dump(mode="json")
        assert dumped["split"] == 0
        assert dumped["condition_incidence"] == 0.0

    def test_empty_incidence(self) -> None:
        """Test the incidence of an empty tally."""
        assert TheoremTally(theorem_id=TheoremId.THM5, alpha=1.0).condition_incidence == 0.0


class TestMeasureModels:
    """Test cases for measure value and record models."""

    def test_negative_value_rejected(self) -> None:
        """Test that measure values are nonnegative."""
        with pytest.raises(ValidationError):
            MeasureValue(name=MeasureName.CREN, value=-0.1, method=MeasureMethod.CLOSED_FORM)

    def test_value_of(self) -> None:
        """Test looking up a measure in a record."""
        record = MeasureRecord(
            cut="0|1",
            side_a=[0],
            side_b=[1],
            measures=[
                MeasureValue(name=MeasureName.TANGLE, value=0.5, method=MeasureMethod.PURE_STATE)
            ],
        )
        assert record.value_of(MeasureName.TANGLE) == 0.5
        assert record.value_of(MeasureName.CREN) is None

    def test_empty_side_rejected(self) -> None:
        """Test that a record side must be nonempty."""
        with pytest.raises(ValidationError, match="at least one"):
            validate_measure_list([{"cut": "|1", "side_a": [], "side_b": [1], "measures": []}])


class TestStateDocuments:
    """Test cases for state document validation."""

    def test_infers_pure(self) -> None:
        """Test that amplitudes imply a pure document."""
        document = validate_state_document({"dims": [2], "amplitudes": [[1, 0], [0, 0]]})
        assert isinstance(document, PureStateDocument)

    def test_infers_mixed_from_json(self) -> None:
        """Test that a JSON matrix implies a mixed document."""
        document = validate_state_document('{"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]]}')
        assert isinstance(document, MixedStateDocument)

    def test_rejects_small_dimension(self) -> None:
        """Test that local dimensions below two are rejected."""
        with pytest.raises(ValidationError):
            validate_state_document({"kind": "pure", "dims": [1], "amplitudes": [[1, 0]]})


class TestRunModels:
    """Test cases for CLI run models."""

    def test_alpha_grid(self) -> None:
        """Test parsing and expanding an alpha grid."""
        grid = AlphaGrid.parse("3:5:3")
        assert grid.values() == pytest.approx([3.0, 4.0, 5.0])

    @pytest.mark.parametrize("text", ["5:3:3", "3:5:1", "3:5"])
    def test_bad_alpha_grid(self, text: str) -> None:
        """Test that malformed or decreasing grids are rejected."""
        with pytest.raises(ValueError):  # noqa: PT011
            AlphaGrid.parse(text)

    def test_quoted_profile_spec(self) -> None:
        """Test parsing TOTAL:E0,E1."""
        spec = QuotedProfileSpec.parse("1:0.5,0.25")
        assert spec.total == 1.0
        assert spec.pairwise == [0.5, 0.25]

    def test_quoted_profile_needs_two_values(self) -> None:
        """Test that a quoted profile needs at least two pairwise values."""
        with pytest.raises(ValidationError):
            QuotedProfileSpec.parse("1:0.5")

    def test_run_spec_exclusive_alpha(self) -> None:
        """Test that --alpha and --alpha-grid cannot be combined."""
        with pytest.raises(ValidationError, match="mutually exclusive"):
            RunSpec(
                command=Command.CHECK,
                state_source="catalog:w",
                alpha=3.0,
                alpha_grid=AlphaGrid(lo=3.0, hi=4.0, steps=2),
            )

    def test_run_spec_needs_input(self) -> None:
        """Test that check needs a state or a profile."""
        with pytest.raises(ValidationError, match="needs --state or --profile"):
            RunSpec(command=Command.CHECK, alpha=3.0)

    def test_run_spec_measure_restricted(self) -> None:
        """Test that only profile measures are accepted."""
        with pytest.raises(ValidationError):
            RunSpec(command=Command.CATALOG, measure=MeasureName.NEGATIVITY)

    def test_sweep_needs_grid(self) -> None:
        """Test that sweep needs an alpha grid."""
        with pytest.raises(ValidationError, match="alpha-grid"):
            RunSpec(command=Command.SWEEP, state_source="catalog:w")


class TestEnvelope:
    """Test cases for ReportEnvelope class."""

    def test_generic_items(self) -> None:
        """Test wrapping sweep rows."""
        row = SweepRow(
            alpha=3.0, lhs=1.0, rhs_baseline=0.5, rhs_thm1=0.6, rhs_thm2=None, margin=0.4
        )
        envelope = ReportEnvelope[SweepRow](command="sweep", version="0.1.0", items=[row])
        assert envelope.items[0].rhs_thm2 is None

    def test_bad_version(self) -> None:
        """Test rejection of a malformed version string."""
        with pytest.raises(ValidationError, match="Invalid version"):
            ReportEnvelope[RhsTerm](command="check", version="one", items=[])

    def test_empty_command(self) -> None:
        """Test rejection of an empty command."""
        with pytest.raises(ValidationError, match="must not be empty"):
            ReportEnvelope[ConditionVerdict](command=" ", version="0.1.0", items=[])
