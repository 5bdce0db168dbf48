"""Models for entanglement measure values."""

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


class MeasureName(StrEnum):
    """Every bipartite measure the library computes."""

    NEGATIVITY = "negativity"
    LOG_NEGATIVITY = "log_negativity"
    CONCURRENCE = "concurrence"
    CONCURRENCE_ASSIST = "concurrence_assist"
    CREN = "cren"
    CRENOA = "crenoa"
    LCREN = "lcren"
    LCRENOA = "lcrenoa"
    TANGLE = "tangle"


class MeasureMethod(StrEnum):
    """How a measure value was obtained."""

    CLOSED_FORM = "closed_form"
    PURE_STATE = "pure_state"
    ROOF_OPTIMIZER = "roof_optimizer"
    QUOTED = "quoted"


class MeasureValue(BaseModel):
    """One measure evaluated on one cut."""

    model_config = ConfigDict(frozen=True)

    name: MeasureName
    value: float = Field(..., ge=0, description="Measure value, logarithmic ones in bits")
    method: MeasureMethod
    error_bound: float = Field(0.0, ge=0)
    converged: bool = True


class MeasureRecord(BaseModel):
    """All measures computed for a single cut ``side_a | side_b``."""

    model_config = ConfigDict(frozen=True)

    cut: str
    side_a: list[int]
    side_b: list[int]
    measures: list[MeasureValue]

    @field_validator("side_a", "side_b")
    @classmethod
    def validate_side(cls, v: list[int]) -> list[int]:
        """Each side lists at least one subsystem."""
        if not v:
            msg = "A cut side must contain at least one subsystem"
            raise ValueError(msg)
        return v

    def value_of(self, name: MeasureName) -> float | None:
        """Return the value of ``name`` in this record, if present."""
        for measure in self.measures:
            if measure.name == name:
                return measure.value
        return None


def validate_measure_list(records: list[dict[str, Any]]) -> list[MeasureRecord]:
    """Validate a list of record dicts into MeasureRecord objects, raising ValidationError."""
    return [MeasureRecord.model_validate(item) for item in records]
