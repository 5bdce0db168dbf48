"""Tests for dense linear algebra and subsystem index handling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entanglion.errors import DimensionError
from entanglion.states import haar_random_pure, haar_random_unitary
from entanglion.tensor import (
    SubsystemShape,
    bipartite_coefficients,
    clamp_spectrum,
    hermitian_eigenvalues,
    is_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    trace_norm,
)


class TestSubsystemShape:
    """Test cases for SubsystemShape class."""

    def test_total_and_size(self) -> None:
        """Test derived total dimension and subsystem count."""
        shape = SubsystemShape.of([3, 2, 2])
        assert shape.total == 12
        assert shape.size == 3

    def test_subshape_sorts_indices(self) -> None:
        """Test that a subshape keeps subsystems in ascending order."""
        shape = SubsystemShape.of([2, 3, 4])
        assert shape.subshape([2, 0]).dims == (2, 4)

    def test_local_dimension_below_two(self) -> None:
        """Test rejection of a one-dimensional subsystem."""
        with pytest.raises(ValueError, match=">= 2"):
            SubsystemShape.of([2, 1])

    def test_total_above_cap(self) -> None:
        """Test rejection of shapes above the dense-storage cap."""
        with pytest.raises(ValueError, match="exceeds the cap"):
            SubsystemShape.of([2] * 7)

    def test_subshape_out_of_range(self) -> None:
        """Test that an index past the last subsystem raises DimensionError."""
        with pytest.raises(DimensionError):
            SubsystemShape.of([2, 2]).subshape([2])


class TestPartialOperations:
    """Test cases for partial trace and partial transpose."""

    def test_partial_trace_of_product(self) -> None:
        """Test that tracing a product operator returns the kept factor."""
        a = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
        b = np.array([[0.5, 0.2], [0.2, 0.5]])
        shape = SubsystemShape.of([2, 2])
        np.testing.assert_allclose(partial_trace(kron(a, b), shape, [0]), a * np.trace(b))
        np.testing.assert_allclose(partial_trace(kron(a, b), shape, [1]), b * np.trace(a))

    def test_partial_trace_keep_all_copies(self) -> None:
        """Test that keeping every subsystem returns an equal copy."""
        m = np.eye(4, dtype=np.complex128) / 4
        result = partial_trace(m, SubsystemShape.of([2, 2]), [0, 1])
        np.testing.assert_allclose(result, m)
        assert result is not m

    def test_partial_trace_middle_subsystem(self) -> None:
        """Test tracing the middle of three subsystems on a basis state."""
        psi = np.zeros(8, dtype=np.complex128)
        psi[0b101] = 1.0
        rho = np.outer(psi, psi.conj())
        reduced = partial_trace(rho, SubsystemShape.of([2, 2, 2]), [0, 2])
        expected = np.zeros((4, 4))
        expected[3, 3] = 1.0
        np.testing.assert_allclose(reduced, expected)

    def test_partial_transpose_bell(self) -> None:
        """Test that the Bell state's partial transpose has eigenvalue -1/2."""
        psi = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
        rho = np.outer(psi, psi.conj())
        transposed = partial_transpose(rho, SubsystemShape.of([2, 2]), [0])
        assert hermitian_eigenvalues(transposed)[-1] == pytest.approx(-0.5)
        assert trace_norm(transposed) == pytest.approx(2.0)

    def test_partial_transpose_is_involution(self) -> None:
        """Test that transposing the same subsystem twice is the identity."""
        rng = np.random.default_rng(3)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        shape = SubsystemShape.of([3, 2])
        twice = partial_transpose(partial_transpose(m, shape, [1]), shape, [1])
        np.testing.assert_allclose(twice, m)

    def test_wrong_operator_size(self) -> None:
        """Test that a matrix not matching the shape raises DimensionError."""
        with pytest.raises(DimensionError):
            partial_trace(np.eye(3), SubsystemShape.of([2, 2]), [0])


class TestSpectra:
    """Test cases for Hermitian spectra and norms."""

    def test_clamp_spectrum(self) -> None:
        """Test that tiny eigenvalues snap to zero."""
        np.testing.assert_array_equal(clamp_spectrum(np.array([0.5, 1e-13, -1e-12])), [0.5, 0, 0])

    def test_eigenvalues_descending(self) -> None:
        """Test descending order of Hermitian eigenvalues."""
        values = hermitian_eigenvalues(np.diag([0.1, 0.6, 0.3]).astype(np.complex128))
        np.testing.assert_allclose(values, [0.6, 0.3, 0.1])

    def test_psd_sqrt_squares_back(self) -> None:
        """Test that the PSD square root squares to its argument."""
        m = np.array([[2.0, 1j], [-1j, 2.0]])
        root = psd_sqrt(m)
        np.testing.assert_allclose(root @ root, m, atol=1e-12)

    def test_trace_norm_non_hermitian(self) -> None:
        """Test the trace norm of a non-Hermitian matrix via singular values."""
        assert trace_norm(np.array([[0.0, 2.0], [0.0, 0.0]])) == pytest.approx(2.0)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_trace_norm_unitary_invariance(self, seed: int) -> None:
        """Test that multiplying by unitaries on either side keeps the trace norm."""
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        u, v = haar_random_unitary(6, rng), haar_random_unitary(6, rng)
        assert trace_norm(u @ m @ v) == pytest.approx(trace_norm(m), abs=1e-9)

    def test_is_hermitian(self) -> None:
        """Test the Hermiticity check on both outcomes."""
        assert is_hermitian(np.array([[1.0, 1j], [-1j, 0.0]]))
        assert not is_hermitian(np.array([[1.0, 1j], [1j, 0.0]]))


class TestBipartiteCoefficients:
    """Test cases for coefficient-matrix reshaping."""

    def test_reordered_sides(self) -> None:
        """Test that side A may be a non-leading subsystem."""
        psi = np.zeros(12, dtype=np.complex128)
        psi[np.ravel_multi_index((2, 1, 0), (3, 2, 2))] = 1.0
        coeffs = bipartite_coefficients(psi[None, :], (3, 2, 2), [1])
        assert coeffs.shape == (1, 2, 6)
        assert coeffs[0, 1, np.ravel_multi_index((2, 0), (3, 2))] == 1.0

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32))
    def test_gram_matches_partial_trace(self, seed: int) -> None:
        """Test that M M^dagger equals the partial trace for random states."""
        state = haar_random_pure([2, 3, 2], seed)
        coeffs = bipartite_coefficients(state.data[None, :], state.dims, [0, 2])[0]
        expected = partial_trace(state.density_matrix(), state.shape, [0, 2])
        np.testing.assert_allclose(coeffs @ coeffs.conj().T, expected, atol=1e-12)
