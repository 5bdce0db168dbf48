"""Models describing one CLI invocation."""

from enum import StrEnum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from entanglion.models.measures import MeasureName
from entanglion.models.reports import TheoremId

PROFILE_MEASURES = (MeasureName.LCREN, MeasureName.LCRENOA, MeasureName.TANGLE)


class Command(StrEnum):
    """CLI sub-commands."""

    MEASURE = "measure"
    CHECK = "check"
    SWEEP = "sweep"
    RANDOM_SUITE = "random-suite"
    CATALOG = "catalog"


class OutputFormat(StrEnum):
    """Output serialization."""

    JSON = "json"
    CSV = "csv"


class AlphaGrid(BaseModel):
    """Inclusive, evenly spaced grid of alpha values."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    steps: int = Field(..., ge=2)

    @model_validator(mode="after")
    def validate_increasing(self) -> "AlphaGrid":
        """The grid must be strictly increasing."""
        if not self.lo < self.hi:
            msg = f"Alpha grid must be strictly increasing, got {self.lo}:{self.hi}"
            raise ValueError(msg)
        return self

    @classmethod
    def parse(cls, text: str) -> "AlphaGrid":
        """Parse ``lo:hi:steps``."""
        parts = text.split(":")
        if len(parts) != 3:  # noqa: PLR2004
            msg = f"Alpha grid must look like lo:hi:steps, got {text!r}"
            raise ValueError(msg)
        lo, hi, steps = parts
        return cls(lo=float(lo), hi=float(hi), steps=int(steps))

    def values(self) -> list[float]:
        """Grid points from lo to hi inclusive."""
        return [float(a) for a in np.linspace(self.lo, self.hi, self.steps)]


class QuotedProfileSpec(BaseModel):
    """Published values ``TOTAL:E0,E1,...`` used instead of a state."""

    model_config = ConfigDict(frozen=True)

    total: float = Field(..., ge=0)
    pairwise: list[float] = Field(..., min_length=2)

    @field_validator("pairwise")
    @classmethod
    def validate_pairwise(cls, v: list[float]) -> list[float]:
        """Pairwise values are nonnegative."""
        if any(x < 0 for x in v):
            msg = f"Quoted pairwise values must be nonnegative, got {v}"
            raise ValueError(msg)
        return v

    @classmethod
    def parse(cls, text: str) -> "QuotedProfileSpec":
        """Parse ``TOTAL:E0,E1,...``."""
        total, sep, rest = text.partition(":")
        if not sep:
            msg = f"Profile must look like TOTAL:E0,E1,..., got {text!r}"
            raise ValueError(msg)
        return cls(total=float(total), pairwise=[float(x) for x in rest.split(",") if x.strip()])


class RunSpec(BaseModel):
    """Validated arguments of one CLI run."""

    model_config = ConfigDict(frozen=True)

    command: Command
    state_source: str | None = None
    profile: QuotedProfileSpec | None = None
    focus: int = Field(0, ge=0)
    alpha: float | None = None
    alpha_grid: AlphaGrid | None = None
    theorems: list[TheoremId] = Field(default_factory=list)
    measure: MeasureName = MeasureName.LCREN
    out: Path | None = None
    output_format: OutputFormat = OutputFormat.JSON
    seed: int = Field(0, ge=0, lt=2**64)
    count: int = Field(100, ge=1)
    qubits: int = Field(3, ge=3, le=6)
    split: int | None = Field(None, ge=0)

    @field_validator("measure")
    @classmethod
    def validate_measure(cls, v: MeasureName) -> MeasureName:
        """Only the measures that build profiles may be selected."""
        if v not in PROFILE_MEASURES:
            msg = f"--measure must be one of {[m.value for m in PROFILE_MEASURES]}, got {v}"
            raise ValueError(msg)
        return v

    @model_validator(mode="after")
    def validate_sources(self) -> "RunSpec":
        """Check that the flags needed by the command are present and compatible."""
        if self.alpha is not None and self.alpha_grid is not None:
            msg = "--alpha and --alpha-grid are mutually exclusive"
            raise ValueError(msg)
        if self.state_source is not None and self.profile is not None:
            msg = "--state and --profile are mutually exclusive"
            raise ValueError(msg)
        needs_input = self.command in {Command.MEASURE, Command.CHECK, Command.SWEEP}
        if needs_input and self.state_source is None and self.profile is None:
            msg = f"{self.command} needs --state or --profile"
            raise ValueError(msg)
        if self.command == Command.MEASURE and self.profile is not None:
            msg = "measure needs a state, not a quoted profile"
            raise ValueError(msg)
        if self.command == Command.SWEEP and self.alpha_grid is None:
            msg = "sweep needs --alpha-grid"
            raise ValueError(msg)
        return self
