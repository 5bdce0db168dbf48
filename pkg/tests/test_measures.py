"""Tests for bipartite entanglement measures."""

import math

import numpy as np
import pytest

from entanglion.errors import BipartitionError, DimensionError
from entanglion.measures import (
    Bipartition,
    all_measures,
    concurrence_2qubit,
    concurrence_assist_2qubit,
    cren,
    crenoa,
    lcren,
    lcrenoa,
    log_negativity,
    negativity,
    pure_negativity,
    pure_sqrt_tangle,
    tangle,
    to_logarithmic,
)
from entanglion.models import MeasureMethod, MeasureName, MeasureValue
from entanglion.roof import RoofConfig
from entanglion.states import (
    CATALOG,
    CatalogEntry,
    QuantumState,
    haar_random_pure,
    local_unitary,
    mix,
    nonconvexity_pair,
    product_state,
    singlet_state,
    state_322,
)


class TestBipartition:
    """Test cases for Bipartition class."""

    def test_label(self) -> None:
        """Test the human-readable form of a cut."""
        assert Bipartition.focus_rest(1, 4).label == "1|0,2,3"

    def test_involved(self) -> None:
        """Test that involved subsystems are listed in ascending order."""
        assert Bipartition.split(2, [0]).involved == [0, 2]

    def test_overlap_rejected(self) -> None:
        """Test that overlapping sides are rejected."""
        with pytest.raises(ValueError, match="overlap"):
            Bipartition.split(0, [0, 1])

    def test_empty_side_rejected(self) -> None:
        """Test that an empty side is rejected."""
        with pytest.raises(ValueError, match="nonempty"):
            Bipartition.split(0, [])

    def test_cut_outside_state(self, bell: QuantumState) -> None:
        """Test that a cut naming a missing subsystem raises BipartitionError."""
        with pytest.raises(BipartitionError):
            negativity(bell, Bipartition.split(0, [2]))


class TestPureFunctionals:
    """Test cases for the vectorized pure-state functionals."""

    def test_batch_of_bell_and_product(self) -> None:
        """Test both functionals on a maximally entangled and a product row."""
        rows = np.array([[1, 0, 0, 1], [1, 0, 0, 0]], dtype=np.complex128)
        rows[0] /= math.sqrt(2)
        np.testing.assert_allclose(pure_negativity(rows, (2, 2), (0,)), [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(pure_sqrt_tangle(rows, (2, 2), (0,)), [1.0, 0.0], atol=1e-12)


class TestClosedForms:
    """Test cases for negativity and the two-qubit formulas."""

    def test_bell_negativity(self, bell: QuantumState) -> None:
        """Test negativity and log-negativity of the Bell state."""
        cut = Bipartition.split(0, [1])
        assert negativity(bell, cut).value == pytest.approx(1.0)
        assert log_negativity(bell, cut).value == pytest.approx(1.0)

    def test_product_state_is_separable(self) -> None:
        """Test that every measure vanishes on a product state."""
        state = product_state([2, 3], [1, 2])
        values = all_measures(state, Bipartition.split(0, [1]))
        assert all(v.value == pytest.approx(0.0, abs=1e-12) for v in values)

    def test_mixed_negativity_uses_partial_transpose(self) -> None:
        """Test that a mixed state is evaluated in closed form."""
        rho = mix([singlet_state(), product_state([2, 2], [0, 1])], [0.5, 0.5])
        value = negativity(rho, Bipartition.split(0, [1]))
        assert value.method == MeasureMethod.CLOSED_FORM
        assert value.value == pytest.approx(0.5)

    def test_concurrence_of_mixture(self) -> None:
        """Test Wootters concurrence and assistance on the singlet/|01> mixture."""
        rho = mix(list(nonconvexity_pair()), [0.5, 0.5])
        assert concurrence_2qubit(rho).value == pytest.approx(0.5)
        assert concurrence_assist_2qubit(rho).value == pytest.approx(math.sqrt(3) / 2)

    def test_concurrence_needs_two_qubits(self, antisym: QuantumState) -> None:
        """Test that the two-qubit formulas reject other dimensions."""
        with pytest.raises(DimensionError):
            concurrence_2qubit(antisym.reduce([0, 1]))

    def test_w_pairs(self, w: QuantumState) -> None:
        """Test concurrence and assistance of a W-state pair."""
        pair = w.reduce([0, 1])
        assert concurrence_2qubit(pair).value == pytest.approx(2 / 3)
        assert concurrence_assist_2qubit(pair).value == pytest.approx(2 / 3)


class TestRoofMeasures:
    """Test cases for CREN, CRENoA, their logarithmic forms and the tangle."""

    def test_pure_total_cut(self, example_gsd: QuantumState) -> None:
        """Test the pure-state value across the focus cut."""
        value = cren(example_gsd, Bipartition.focus_rest(0, 3))
        assert value.method == MeasureMethod.PURE_STATE
        assert value.value == pytest.approx(4 / 5)

    def test_gsd_pairs(self, example_gsd: QuantumState) -> None:
        """Test the pairwise CREN values of the Schmidt-form state."""
        assert cren(example_gsd, Bipartition.split(0, [1])).value == pytest.approx(2 / 5)
        assert cren(example_gsd, Bipartition.split(0, [2])).value == pytest.approx(
            2 * math.sqrt(2) / 5
        )

    def test_df4_pairs(self, df4_balanced: QuantumState) -> None:
        """Test that only the (A, C) pair of the balanced decoherence-free state is entangled."""
        values = [cren(df4_balanced, Bipartition.split(0, [b])).value for b in (1, 2, 3)]
        np.testing.assert_allclose(values, [0.0, math.sqrt(3) / 2, 0.0], atol=1e-9)
        assert cren(df4_balanced, Bipartition.focus_rest(0, 4)).value == pytest.approx(1.0)

    def test_w_assisted_total(self, w: QuantumState) -> None:
        """Test CRENoA of the W state across the focus cut."""
        assert crenoa(w, Bipartition.focus_rest(0, 3)).value == pytest.approx(2 * math.sqrt(2) / 3)

    def test_lcren_nonconvex(self) -> None:
        """Test that LCREN of a mixture exceeds the average of its parts."""
        rho1, rho2 = nonconvexity_pair()
        cut = Bipartition.split(0, [1])
        mixed = lcren(mix([rho1, rho2], [0.5, 0.5]), cut).value
        average = 0.5 * lcren(rho1, cut).value + 0.5 * lcren(rho2, cut).value
        assert mixed - average == pytest.approx(math.log2(1.5) - 0.5)

    def test_antisym_pairs_by_roof(self, antisym: QuantumState, fast_roof: RoofConfig) -> None:
        """Test roof values on the two-qutrit marginal, where every member has value 1."""
        cut = Bipartition.split(0, [1])
        for value in (cren(antisym, cut, fast_roof), tangle(antisym, cut, fast_roof)):
            assert value.method == MeasureMethod.ROOF_OPTIMIZER
            assert value.value == pytest.approx(1.0, abs=1e-9)
        assert lcrenoa(antisym, cut, fast_roof).value == pytest.approx(1.0, abs=1e-9)

    def test_tangle_pure(self, antisym: QuantumState) -> None:
        """Test the tangle across the focus cut of the antisymmetric state."""
        assert tangle(antisym, Bipartition.focus_rest(0, 3)).value == pytest.approx(4 / 3)

    def test_to_logarithmic_error(self) -> None:
        """Test that the error bound is carried through the logarithm."""
        base = MeasureValue(
            name=MeasureName.CREN,
            value=1.0,
            method=MeasureMethod.ROOF_OPTIMIZER,
            error_bound=0.1,
        )
        result = to_logarithmic(base, MeasureName.LCREN)
        assert result.value == pytest.approx(1.0)
        assert result.error_bound == pytest.approx(0.1 / (1.9 * math.log(2)))

    def test_all_measures_two_qubit(self, bell: QuantumState) -> None:
        """Test that two-qubit cuts also report concurrence and assistance."""
        names = [v.name for v in all_measures(bell, Bipartition.split(0, [1]))]
        assert names == [
            MeasureName.NEGATIVITY,
            MeasureName.LOG_NEGATIVITY,
            MeasureName.CONCURRENCE,
            MeasureName.CONCURRENCE_ASSIST,
            MeasureName.CREN,
            MeasureName.CRENOA,
            MeasureName.LCREN,
            MeasureName.LCRENOA,
            MeasureName.TANGLE,
        ]

    def test_cren_below_crenoa(self, w: QuantumState) -> None:
        """Test CREN <= CRENoA on a mixed pair."""
        cut = Bipartition.split(0, [2])
        assert cren(w, cut).value <= crenoa(w, cut).value + 1e-12


class TestLocalUnitaryInvariance:
    """Test that measures do not change under local unitaries."""

    @pytest.mark.parametrize("seed", range(100))
    def test_pure_focus_cut(self, seed: int) -> None:
        """Test negativity, CREN and LCREN of a random three-qubit state after local rotation."""
        state = haar_random_pure([2, 2, 2], 11)
        rotated = state.evolve(local_unitary([2, 2, 2], seed))
        cut = Bipartition.focus_rest(0, 3)
        for measure in (negativity, cren, lcren):
            assert measure(rotated, cut).value == pytest.approx(
                measure(state, cut).value, abs=1e-8
            )

    @pytest.mark.parametrize("seed", range(100))
    def test_mixed_pair(self, seed: int) -> None:
        """Test the closed-form paths on a random two-qubit mixed state after local rotation."""
        state = haar_random_pure([2, 2, 2], 12).reduce([0, 1])
        rotated = state.evolve(local_unitary([2, 2], seed))
        cut = Bipartition.split(0, [1])
        for measure in (negativity, cren, lcren):
            assert measure(rotated, cut).value == pytest.approx(
                measure(state, cut).value, abs=1e-8
            )


class TestTangleCounterexample:
    """Test cases for the 3x2x2 state that violates the tangle relation."""

    def test_pair_tangle_upper_bound(self, fast_roof: RoofConfig) -> None:
        """Test that the roof search reaches 8/9 on the (A, B) marginal."""
        value = tangle(state_322(), Bipartition.split(0, [1]), fast_roof)
        assert value.method == MeasureMethod.ROOF_OPTIMIZER
        assert value.value <= 8 / 9 + 1e-2
        assert value.value == pytest.approx(8 / 9, abs=1e-2)

    def test_total_tangle_exceeds_pair_sum(self) -> None:
        """Test the pure-state tangle across the focus cut."""
        assert tangle(state_322(), Bipartition.focus_rest(0, 3)).value == pytest.approx(4 / 3)


_MEASURE_FUNCTIONS = {
    MeasureName.CREN: cren,
    MeasureName.CRENOA: crenoa,
    MeasureName.LCREN: lcren,
    MeasureName.TANGLE: tangle,
}


class TestCatalogReferenceValues:
    """Test that every catalog state takes its listed reference values."""

    @pytest.mark.parametrize("entry", list(CATALOG.values()), ids=list(CATALOG))
    def test_reference_values(self, entry: CatalogEntry, fast_roof: RoofConfig) -> None:
        """Test each listed value, loosening the tolerance only for roof searches."""
        state = entry.build()
        assert entry.reference_values
        for ref in entry.reference_values:
            cut = Bipartition.split(ref.side_a, ref.side_b)
            result = _MEASURE_FUNCTIONS[ref.measure](state, cut, fast_roof)
            tol = 1e-2 if result.method == MeasureMethod.ROOF_OPTIMIZER else 1e-9
            assert result.value == pytest.approx(ref.value, abs=tol), ref.label
