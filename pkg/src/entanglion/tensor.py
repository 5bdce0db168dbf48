"""Dense complex linear algebra and multipartite index manipulation.

Matrices are plain ``numpy`` complex128 arrays in row-major order. A composite index
``|j_0 j_1 ... j_{n-1}>`` unravels in mixed radix over ``SubsystemShape.dims`` with ``j_0`` the
most significant digit, which is exactly ``numpy``'s C-order reshape to ``dims``.
"""

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, field_validator
from scipy import linalg

from entanglion.config import EIGEN_CLAMP_TOL, HERMITIAN_TOL, MAX_TOTAL_DIM
from entanglion.errors import DimensionError

logger = logging.getLogger("entanglion.tensor")

type ComplexMatrix = npt.NDArray[np.complex128]
type RealArray = npt.NDArray[np.float64]


class SubsystemShape(BaseModel):
    """Ordered local dimensions of a multipartite system (A, B_0, ..., B_{N-1})."""

    model_config = ConfigDict(frozen=True)

    dims: tuple[int, ...]

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Require at least one subsystem, local dimensions >= 2 and a total within the cap."""
        if not v:
            msg = "A subsystem shape needs at least one subsystem"
            raise ValueError(msg)
        if any(d < 2 for d in v):  # noqa: PLR2004
            msg = f"Local dimensions must be >= 2, got {list(v)}"
            raise ValueError(msg)
        check_dimension(math.prod(v))
        return v

    @classmethod
    def of(cls, dims: Iterable[int]) -> "SubsystemShape":
        """Build a shape from any iterable of dimensions."""
        return cls(dims=tuple(int(d) for d in dims))

    @property
    def total(self) -> int:
        """Total Hilbert space dimension."""
        return math.prod(self.dims)

    @property
    def size(self) -> int:
        """Number of subsystems."""
        return len(self.dims)

    def subshape(self, indices: Iterable[int]) -> "SubsystemShape":
        """Shape of the subsystems in ``indices`` (ascending order)."""
        return SubsystemShape(dims=tuple(self.dims[i] for i in normalize_indices(indices, self)))


def check_dimension(total: int) -> None:
    """Raise if a total dimension exceeds the dense-storage cap."""
    if total > MAX_TOTAL_DIM:
        msg = f"Total dimension {total} exceeds the cap of {MAX_TOTAL_DIM}"
        raise DimensionError(msg)


def normalize_indices(indices: Iterable[int], shape: SubsystemShape) -> list[int]:
    """Return the sorted, de-duplicated subsystem indices after a range check."""
    result = sorted({int(i) for i in indices})
    for i in result:
        if not 0 <= i < shape.size:
            msg = f"Subsystem index {i} out of range for {shape.size} subsystems"
            raise DimensionError(msg)
    return result


def _check_operator(m: ComplexMatrix, shape: SubsystemShape) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:  # noqa: PLR2004
        msg = f"Expected a square matrix, got shape {m.shape}"
        raise DimensionError(msg)
    if m.shape[0] != shape.total:
        msg = f"Matrix dimension {m.shape[0]} does not match subsystem dims {list(shape.dims)}"
        raise DimensionError(msg)


def _check_square(m: ComplexMatrix) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:  # noqa: PLR2004
        msg = f"Expected a square matrix, got shape {m.shape}"
        raise DimensionError(msg)


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product ``a (x) b``."""
    check_dimension(max(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def partial_trace(m: ComplexMatrix, shape: SubsystemShape, keep: Iterable[int]) -> ComplexMatrix:
    """Trace out every subsystem not in ``keep``; kept subsystems stay in ascending order."""
    _check_operator(m, shape)
    kept = normalize_indices(keep, shape)
    n = shape.size
    if len(kept) == n:
        return np.array(m, dtype=np.complex128, copy=True)

    traced = [i for i in range(n) if i not in kept]
    tensor = np.asarray(m, dtype=np.complex128).reshape(shape.dims + shape.dims)
    perm = kept + traced + [n + i for i in kept] + [n + i for i in traced]
    dk = math.prod(shape.dims[i] for i in kept)
    dt = math.prod(shape.dims[i] for i in traced)
    tensor = tensor.transpose(perm).reshape(dk, dt, dk, dt)
    return np.einsum("ijkj->ik", tensor)


def partial_transpose(
    m: ComplexMatrix,
    shape: SubsystemShape,
    subset: Iterable[int],
) -> ComplexMatrix:
    """Transpose the row/column indices of the subsystems in ``subset``."""
    _check_operator(m, shape)
    chosen = normalize_indices(subset, shape)
    n = shape.size
    axes = list(range(2 * n))
    for i in chosen:
        axes[i], axes[n + i] = n + i, i
    tensor = np.asarray(m, dtype=np.complex128).reshape(shape.dims + shape.dims)
    return tensor.transpose(axes).reshape(shape.total, shape.total)


def is_hermitian(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    """Check max|M - M^dagger| <= tol."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:  # noqa: PLR2004
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def clamp_spectrum(values: RealArray, tol: float = EIGEN_CLAMP_TOL) -> RealArray:
    """Set eigenvalues within ``tol`` of zero to exactly zero."""
    clamped = np.array(values, dtype=np.float64, copy=True)
    clamped[np.abs(clamped) <= tol] = 0.0
    return clamped


def hermitian_eigenvalues(m: ComplexMatrix) -> RealArray:
    """Eigenvalues of a Hermitian matrix in descending order, clamped near zero."""
    _check_square(m)
    hermitian_part = 0.5 * (m + m.conj().T)
    values = linalg.eigvalsh(hermitian_part)[::-1]
    return clamp_spectrum(values)


def hermitian_eigh(m: ComplexMatrix) -> tuple[RealArray, ComplexMatrix]:
    """Eigenpairs of a Hermitian matrix, descending, eigenvalues clamped near zero."""
    _check_square(m)
    values, vectors = linalg.eigh(0.5 * (m + m.conj().T))
    return clamp_spectrum(values[::-1]), vectors[:, ::-1]


def psd_sqrt(m: ComplexMatrix) -> ComplexMatrix:
    """Square root of a positive semidefinite Hermitian matrix."""
    values, vectors = hermitian_eigh(m)
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def trace_norm(m: ComplexMatrix) -> float:
    """Sum of singular values; for Hermitian input the sum of |eigenvalues|."""
    _check_square(m)
    if is_hermitian(m):
        return float(np.sum(np.abs(linalg.eigvalsh(0.5 * (m + m.conj().T)))))
    return float(np.sum(linalg.svdvals(m)))


def bipartite_coefficients(
    vectors: ComplexMatrix,
    dims: Sequence[int],
    a_axes: Sequence[int],
) -> npt.NDArray[np.complex128]:
    """Reshape a batch of state vectors ``(K, D)`` into ``(K, d_A, d_B)`` coefficient matrices.

    ``a_axes`` lists the subsystems (positions in ``dims``) that form side A; the remaining
    subsystems form side B, both in ascending order.
    """
    a_list = sorted(a_axes)
    b_list = [i for i in range(len(dims)) if i not in a_list]
    batch = vectors.shape[0]
    tensor = vectors.reshape((batch, *dims))
    perm = (0, *(1 + i for i in a_list), *(1 + i for i in b_list))
    d_a = math.prod(dims[i] for i in a_list)
    d_b = math.prod(dims[i] for i in b_list)
    return tensor.transpose(perm).reshape(batch, d_a, d_b)
