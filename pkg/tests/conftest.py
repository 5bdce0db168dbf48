"""Test configuration and fixtures for entanglion tests."""

import json
import math
from collections.abc import Callable
from pathlib import Path

import pytest

from entanglion.inequalities import MeasureProfile, quoted_profile
from entanglion.models import MeasureName
from entanglion.roof import RoofConfig
from entanglion.states import (
    QuantumState,
    antisym_qutrit_state,
    bell_state,
    df4_state,
    gsd_state,
    state_to_document,
    w_state,
)


@pytest.fixture
def fast_roof() -> RoofConfig:
    """Create a small roof configuration that keeps tests quick."""
    return RoofConfig(restarts=4, max_iterations=400, seed=7)


@pytest.fixture
def w() -> QuantumState:
    """Create the three-qubit W state."""
    return w_state()


@pytest.fixture
def example_gsd() -> QuantumState:
    """Create the three-qubit Schmidt-form state with N(A|BC) = 4/5."""
    return gsd_state(1 / math.sqrt(5), 0.0, math.sqrt(2 / 5), 1 / math.sqrt(5), 1 / math.sqrt(5))


@pytest.fixture
def df4_balanced() -> QuantumState:
    """Create the four-qubit decoherence-free state with a = b = 1/sqrt 2."""
    return df4_state(1 / math.sqrt(2), 1 / math.sqrt(2))


@pytest.fixture
def antisym() -> QuantumState:
    """Create the totally antisymmetric three-qutrit state."""
    return antisym_qutrit_state()


@pytest.fixture
def bell() -> QuantumState:
    """Create the Bell state (|00> + |11>)/sqrt 2."""
    return bell_state()


@pytest.fixture
def four_party_profile() -> MeasureProfile:
    """Create a quoted four-qubit LCREN profile whose geometric conditions hold."""
    return quoted_profile(1.0, [0.934101, 0.415001, 0.314986], MeasureName.LCREN)


@pytest.fixture
def write_state(tmp_path: Path) -> Callable[[QuantumState, str], Path]:
    """Return a helper that writes a state document to a temporary JSON file."""

    def _write(state: QuantumState, name: str = "state.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(state_to_document(state).model_dump()), encoding="utf-8")
        return path

    return _write
