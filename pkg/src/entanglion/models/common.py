"""Generic envelope for every report the CLI writes."""

import re

from pydantic import BaseModel, ConfigDict, field_validator

_VERSION_PATTERN = re.compile(r"^\d+\.\d+\.\d+([.-]?\w+)?$")


class ReportEnvelope[T: BaseModel](BaseModel):
    """Generic model wrapping the items of one CLI run with its provenance."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    command: str
    version: str
    seed: int | None = None
    haar_algorithm: str | None = None
    source: str | None = None
    items: list[T]

    @field_validator("command")
    @classmethod
    def validate_command(cls, v: str) -> str:
        """Reject an empty command name."""
        if not v.strip():
            msg = "Report command must not be empty"
            raise ValueError(msg)
        return v

    @field_validator("version")
    @classmethod
    def validate_version(cls, v: str) -> str:
        """Validate that the version looks like MAJOR.MINOR.PATCH."""
        if not _VERSION_PATTERN.match(v):
            msg = f"Invalid version string: {v}"
            raise ValueError(msg)
        return v
