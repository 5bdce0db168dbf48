"""Pydantic models for entanglion reports, state documents and run specifications."""

from entanglion.models.common import ReportEnvelope
from entanglion.models.measures import (
    MeasureMethod,
    MeasureName,
    MeasureRecord,
    MeasureValue,
    validate_measure_list,
)
from entanglion.models.reports import (
    CheckEnvelope,
    ConditionVerdict,
    InequalityReport,
    RhsTerm,
    SuiteSummary,
    SweepRow,
    TheoremId,
    TheoremTally,
    TightnessVerdict,
    Verdict,
    validate_report_list,
)
from entanglion.models.run import AlphaGrid, Command, OutputFormat, QuotedProfileSpec, RunSpec
from entanglion.models.states import (
    MixedStateDocument,
    PureStateDocument,
    StateDocument,
    validate_state_document,
)

__all__ = [
    "AlphaGrid",
    "CheckEnvelope",
    "Command",
    "ConditionVerdict",
    "InequalityReport",
    "MeasureMethod",
    "MeasureName",
    "MeasureRecord",
    "MeasureValue",
    "MixedStateDocument",
    "OutputFormat",
    "PureStateDocument",
    "QuotedProfileSpec",
    "ReportEnvelope",
    "RhsTerm",
    "RunSpec",
    "StateDocument",
    "SuiteSummary",
    "SweepRow",
    "TheoremId",
    "TheoremTally",
    "TightnessVerdict",
    "Verdict",
    "validate_measure_list",
    "validate_report_list",
    "validate_state_document",
]
