"""JSON documents describing quantum states.

Complex numbers are ``[re, im]`` pairs. A document without ``kind`` is treated as pure when it
carries ``amplitudes`` and as mixed when it carries ``matrix``.
"""

import json
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field, TypeAdapter, field_validator

type ComplexPair = tuple[float, float]


class _StateDocumentBase(BaseModel):
    dims: list[int] = Field(..., min_length=1)

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: list[int]) -> list[int]:
        """Local dimensions are at least 2."""
        if any(d < 2 for d in v):  # noqa: PLR2004
            msg = f"Local dimensions must be >= 2, got {v}"
            raise ValueError(msg)
        return v


class PureStateDocument(_StateDocumentBase):
    """A pure state as a list of amplitudes."""

    kind: Literal["pure"] = "pure"
    amplitudes: list[ComplexPair] = Field(..., min_length=1)


class MixedStateDocument(_StateDocumentBase):
    """A mixed state as a dense density matrix."""

    kind: Literal["mixed"] = "mixed"
    matrix: list[list[ComplexPair]] = Field(..., min_length=1)


type StateDocument = Annotated[PureStateDocument | MixedStateDocument, Field(discriminator="kind")]

_STATE_DOCUMENT_ADAPTER: TypeAdapter[PureStateDocument | MixedStateDocument] = TypeAdapter(
    StateDocument
)


def validate_state_document(
    payload: dict[str, Any] | str | bytes,
) -> PureStateDocument | MixedStateDocument:
    """Validate a state document given as a dict or JSON text, inferring ``kind`` if absent."""
    data = json.loads(payload) if isinstance(payload, str | bytes) else dict(payload)
    if isinstance(data, dict) and "kind" not in data:
        if "amplitudes" in data:
            data["kind"] = "pure"
        elif "matrix" in data:
            data["kind"] = "mixed"
    return _STATE_DOCUMENT_ADAPTER.validate_python(data)
