"""Tests for pure-state decompositions and the convex-roof search."""

import functools
import math

import numpy as np
import pytest

from entanglion.errors import EntanglionError, IsometryError
from entanglion.measures import concurrence_2qubit, concurrence_assist_2qubit, pure_negativity
from entanglion.roof import Ensemble, RoofConfig, decompose, roof_maximize, roof_minimize
from entanglion.states import (
    QuantumState,
    haar_random_pure,
    haar_random_unitary,
    mix,
    nonconvexity_pair,
)

TWO_QUBIT_NEGATIVITY = functools.partial(pure_negativity, dims=(2, 2), a_axes=(0,))


@pytest.fixture
def mixture() -> QuantumState:
    """Create the equal mixture of the singlet and |01>."""
    return mix(list(nonconvexity_pair()), [0.5, 0.5])


class TestEnsemble:
    """Test cases for Ensemble class."""

    def test_weights_must_sum_to_one(self) -> None:
        """Test rejection of weights that do not sum to 1."""
        with pytest.raises(ValueError, match="sum to 1"):
            Ensemble(weights=np.array([0.5, 0.6]), members=np.eye(2, dtype=np.complex128))

    def test_members_must_be_normalized(self) -> None:
        """Test rejection of unnormalized members."""
        with pytest.raises(ValueError, match="normalized"):
            Ensemble(weights=np.array([1.0]), members=np.array([[1.0, 1.0]], dtype=np.complex128))

    def test_average(self) -> None:
        """Test the weighted average of a functional."""
        ensemble = Ensemble(weights=np.array([0.25, 0.75]), members=np.eye(2, dtype=np.complex128))
        assert ensemble.average(lambda rows: np.abs(rows[:, 0]) ** 2) == pytest.approx(0.25)


class TestDecompose:
    """Test cases for isometry-generated decompositions."""

    def test_eigen_ensemble(self, mixture: QuantumState) -> None:
        """Test that the identity isometry reproduces the state."""
        ensemble = decompose(mixture, np.eye(2, dtype=np.complex128))
        assert ensemble.reconstruction_error(mixture.density_matrix()) < 1e-12

    def test_random_isometry(self, mixture: QuantumState) -> None:
        """Test that a larger random isometry still reproduces the state."""
        V = haar_random_unitary(4, 9)[:, :2]
        ensemble = decompose(mixture, V)
        assert ensemble.weights.shape[0] <= 4
        assert ensemble.reconstruction_error(mixture.density_matrix()) < 1e-10

    def test_wrong_column_count(self, mixture: QuantumState) -> None:
        """Test that V must have one column per nonzero eigenvalue."""
        with pytest.raises(IsometryError, match="columns"):
            decompose(mixture, np.eye(3, dtype=np.complex128))

    def test_not_an_isometry(self, mixture: QuantumState) -> None:
        """Test that V^dagger V must be the identity."""
        with pytest.raises(IsometryError, match="not an isometry"):
            decompose(mixture, 2 * np.eye(2, dtype=np.complex128))


class TestRoofSearch:
    """Test cases for roof_minimize and roof_maximize."""

    def test_rank_one_is_exact(self) -> None:
        """Test that a pure density matrix needs no search."""
        singlet, _ = nonconvexity_pair()
        result = roof_minimize(singlet, TWO_QUBIT_NEGATIVITY)
        assert result.value == pytest.approx(1.0)
        assert result.iterations == 0
        assert result.converged

    def test_minimize_reaches_concurrence(self, mixture: QuantumState) -> None:
        """Test that the minimum matches the closed-form concurrence from above."""
        result = roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, RoofConfig(restarts=8, seed=1))
        assert result.value >= 0.5 - 1e-9
        assert result.value == pytest.approx(0.5, abs=1e-3)
        assert result.ensemble.reconstruction_error(mixture.density_matrix()) < 1e-8

    def test_maximize_reaches_assistance(self, mixture: QuantumState) -> None:
        """Test that the maximum matches the closed-form concurrence of assistance from below."""
        result = roof_maximize(mixture, TWO_QUBIT_NEGATIVITY, RoofConfig(restarts=8, seed=1))
        assert result.value <= math.sqrt(3) / 2 + 1e-9
        assert result.value == pytest.approx(math.sqrt(3) / 2, abs=1e-3)

    def test_reproducible(self, mixture: QuantumState) -> None:
        """Test that a fixed seed gives the same value."""
        config = RoofConfig(restarts=3, max_iterations=200, seed=42)
        first = roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, config)
        second = roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, config)
        assert first.value == second.value
        assert first.restart_values == second.restart_values

    def test_restart_values_bound_best(self, mixture: QuantumState) -> None:
        """Test that the reported value is the best of all restarts."""
        result = roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, RoofConfig(restarts=5, seed=3))
        assert len(result.restart_values) == 5
        assert result.value == pytest.approx(min(result.restart_values), abs=1e-9)

    def test_unconverged_search_warns(
        self, mixture: QuantumState, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that running out of iterations is logged and widens the error bound."""
        result = roof_minimize(
            mixture, TWO_QUBIT_NEGATIVITY, RoofConfig(restarts=2, max_iterations=5, seed=0)
        )
        assert not result.converged
        assert "did not converge" in caplog.text

    def test_cap_below_rank(self, mixture: QuantumState) -> None:
        """Test that an ensemble smaller than the rank is rejected."""
        with pytest.raises(EntanglionError, match="below the rank"):
            roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, RoofConfig(ensemble_size_cap=1))

    def test_odd_ensemble_size(self, mixture: QuantumState) -> None:
        """Test that an odd ensemble, which leaves one row idle per iteration, still converges."""
        config = RoofConfig(ensemble_size_cap=3, restarts=8, seed=4)
        result = roof_minimize(mixture, TWO_QUBIT_NEGATIVITY, config)
        assert result.value == pytest.approx(0.5, abs=1e-3)
        assert result.ensemble.weights.shape[0] <= 3

    def test_default_budget_converges_on_full_rank(self) -> None:
        """Test that a rank-4 pair converges within the default iteration budget."""
        rho = haar_random_pure([2, 2, 2, 2], 2).reduce([0, 1])
        result = roof_minimize(rho, TWO_QUBIT_NEGATIVITY)
        assert result.converged
        assert result.error_bound < 1e-3


@pytest.mark.slow
class TestClosedFormAgreement:
    """Test the roof search against the two-qubit closed forms with the default settings."""

    @pytest.mark.parametrize("seed", range(50))
    def test_random_two_qubit_states(self, seed: int) -> None:
        """Test both roofs on a random full-rank two-qubit state."""
        rho = haar_random_pure([2, 2, 2, 2], seed).reduce([0, 1])
        low = roof_minimize(rho, TWO_QUBIT_NEGATIVITY)
        high = roof_maximize(rho, TWO_QUBIT_NEGATIVITY)
        assert low.value == pytest.approx(concurrence_2qubit(rho).value, abs=1e-3)
        assert high.value == pytest.approx(concurrence_assist_2qubit(rho).value, abs=1e-3)
