"""Quantum states: validated container, named constructors, random sampling and JSON I/O."""

import functools
import logging
import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from enum import StrEnum
from pathlib import Path

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.stats import unitary_group

from entanglion.config import NORMALIZATION_TOL, PARAMETER_TOL
from entanglion.errors import DimensionError, EntanglionError, NormalizationError
from entanglion.models.measures import MeasureName
from entanglion.models.reports import TheoremId
from entanglion.models.states import (
    MixedStateDocument,
    PureStateDocument,
    validate_state_document,
)
from entanglion.tensor import (
    ComplexMatrix,
    SubsystemShape,
    bipartite_coefficients,
    check_dimension,
    hermitian_eigenvalues,
    is_hermitian,
    kron,
    normalize_indices,
    partial_trace,
)

logger = logging.getLogger("entanglion.states")

HAAR_ALGORITHM = "numpy.PCG64/complex-gaussian-normalized/v1"

_MAX_SEED = 2**64


class StateKind(StrEnum):
    """Pure vector or density matrix."""

    PURE = "pure"
    MIXED = "mixed"


class QuantumState(BaseModel):
    """A validated pure or mixed state on a multipartite system.

    Pure states store a 1-D amplitude vector, mixed states a dense density matrix. ``data`` is a
    private read-only copy of the input.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: StateKind
    data: np.ndarray  # type: ignore[type-arg]
    shape: SubsystemShape

    @field_validator("data", mode="before")
    @classmethod
    def copy_data(cls, v: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Store a read-only complex128 copy."""
        arr = np.array(v, dtype=np.complex128, copy=True)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_state(self) -> "QuantumState":
        """Check normalization (pure) or Hermiticity, unit trace and positivity (mixed)."""
        total = self.shape.total
        if self.kind == StateKind.PURE:
            if self.data.shape != (total,):
                msg = f"Pure state needs {total} amplitudes, got shape {self.data.shape}"
                raise DimensionError(msg)
            norm = float(np.linalg.norm(self.data))
            if abs(norm - 1.0) > NORMALIZATION_TOL:
                msg = f"Pure state norm {norm} differs from 1"
                raise NormalizationError(msg)
            return self

        if self.data.shape != (total, total):
            msg = f"Density matrix must be {total}x{total}, got {self.data.shape}"
            raise DimensionError(msg)
        if not is_hermitian(self.data):
            msg = "Density matrix is not Hermitian"
            raise NormalizationError(msg)
        trace = complex(np.trace(self.data))
        if abs(trace - 1.0) > NORMALIZATION_TOL:
            msg = f"Density matrix trace {trace} differs from 1"
            raise NormalizationError(msg)
        smallest = float(hermitian_eigenvalues(self.data)[-1])
        if smallest < -NORMALIZATION_TOL:
            msg = f"Density matrix has negative eigenvalue {smallest}"
            raise NormalizationError(msg)
        return self

    @classmethod
    def from_vector(cls, vector: npt.ArrayLike, dims: Iterable[int]) -> "QuantumState":
        """Build a pure state from its amplitudes."""
        return cls(kind=StateKind.PURE, data=np.asarray(vector), shape=SubsystemShape.of(dims))

    @classmethod
    def from_density(cls, matrix: npt.ArrayLike, dims: Iterable[int]) -> "QuantumState":
        """Build a mixed state from its density matrix."""
        return cls(kind=StateKind.MIXED, data=matrix, shape=SubsystemShape.of(dims))

    @property
    def is_pure(self) -> bool:
        """True for states stored as vectors."""
        return self.kind == StateKind.PURE

    @property
    def dims(self) -> tuple[int, ...]:
        """Local dimensions."""
        return self.shape.dims

    def density_matrix(self) -> ComplexMatrix:
        """Dense density matrix of the state."""
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return np.array(self.data, copy=True)

    def reduce(self, keep: Iterable[int]) -> "QuantumState":
        """Reduced state on ``keep`` (ascending order); keeping everything returns ``self``."""
        kept = normalize_indices(keep, self.shape)
        if not kept:
            msg = "Cannot reduce onto an empty set of subsystems"
            raise DimensionError(msg)
        if len(kept) == self.shape.size:
            return self
        sub = self.shape.subshape(kept)
        if self.is_pure:
            coeffs = bipartite_coefficients(self.data[None, :], self.dims, kept)[0]
            return QuantumState.from_density(coeffs @ coeffs.conj().T, sub.dims)
        return QuantumState.from_density(partial_trace(self.data, self.shape, kept), sub.dims)

    def evolve(self, unitary: ComplexMatrix) -> "QuantumState":
        """Apply a unitary on the full system."""
        if unitary.shape != (self.shape.total, self.shape.total):
            msg = f"Unitary shape {unitary.shape} does not match dimension {self.shape.total}"
            raise DimensionError(msg)
        if self.is_pure:
            return QuantumState.from_vector(unitary @ self.data, self.dims)
        return QuantumState.from_density(unitary @ self.data @ unitary.conj().T, self.dims)


# --- Constructors ---
def _from_kets(dims: Sequence[int], amplitudes: Mapping[str, complex]) -> QuantumState:
    """Build a pure state from ``{"digits": amplitude}`` with j_0 the most significant digit."""
    vector = np.zeros(math.prod(dims), dtype=np.complex128)
    for digits, amplitude in amplitudes.items():
        index = np.ravel_multi_index(tuple(int(c) for c in digits), tuple(dims))
        vector[index] += amplitude
    return QuantumState.from_vector(vector, dims)


def _check_unit_sum(values: Sequence[float], label: str) -> None:
    total = math.fsum(v * v for v in values)
    if abs(total - 1.0) > PARAMETER_TOL:
        msg = f"{label}: squared parameters sum to {total}, expected 1"
        raise NormalizationError(msg)


def gsd_state(  # noqa: PLR0913
    l0: float,
    l1: float,
    l2: float,
    l3: float,
    l4: float,
    phi: float = 0.0,
) -> QuantumState:
    """Three-qubit state in generalized Schmidt form.

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
    """
    lambdas = (l0, l1, l2, l3, l4)
    if any(v < 0 for v in lambdas):
        msg = f"Schmidt-form coefficients must be nonnegative, got {lambdas}"
        raise NormalizationError(msg)
    _check_unit_sum(lambdas, "gsd_state")
    norm = math.sqrt(math.fsum(v * v for v in lambdas))
    return _from_kets(
        (2, 2, 2),
        {
            "000": l0 / norm,
            "100": l1 * complex(math.cos(phi), math.sin(phi)) / norm,
            "101": l2 / norm,
            "110": l3 / norm,
            "111": l4 / norm,
        },
    )


def w_state() -> QuantumState:
    """(|100> + |010> + |001>)/sqrt(3)."""
    a = 1 / math.sqrt(3)
    return _from_kets((2, 2, 2), {"100": a, "010": a, "001": a})


def df4_state(a: float, b: float) -> QuantumState:
    """Four-qubit decoherence-free state a|Psi_0> + b|Psi_1>.

    |Psi_0> = (|01> - |10>)_AB (|01> - |10>)_CD / 2
    |Psi_1> = (2|1100> + 2|0011> - |1010> - |1001> - |0101> - |0110>) / (2 sqrt 3)
    """
    _check_unit_sum((a, b), "df4_state")
    norm = math.hypot(a, b)
    a, b = a / norm, b / norm
    s3 = math.sqrt(3)
    return _from_kets(
        (2, 2, 2, 2),
        {
            "0101": a / 2 - b / (2 * s3),
            "0110": -a / 2 - b / (2 * s3),
            "1001": -a / 2 - b / (2 * s3),
            "1010": a / 2 - b / (2 * s3),
            "1100": b / s3,
            "0011": b / s3,
        },
    )


def antisym_qutrit_state() -> QuantumState:
    """Totally antisymmetric three-qutrit state."""
    c = 1 / math.sqrt(6)
    return _from_kets(
        (3, 3, 3),
        {"012": c, "021": -c, "120": c, "102": -c, "201": c, "210": -c},
    )


def state_322() -> QuantumState:
    """(sqrt2|010> + sqrt2|101> + |200> + |211>)/sqrt6 on 3 x 2 x 2."""
    s = 1 / math.sqrt(6)
    r = math.sqrt(2) * s
    return _from_kets((3, 2, 2), {"010": r, "101": r, "200": s, "211": s})


def product_state(dims: Sequence[int], digits: Sequence[int]) -> QuantumState:
    """Computational basis product state |digits>."""
    if len(dims) != len(digits):
        msg = f"Got {len(digits)} digits for {len(dims)} subsystems"
        raise DimensionError(msg)
    if any(not 0 <= d < n for d, n in zip(digits, dims, strict=True)):
        msg = f"Digits {list(digits)} out of range for dims {list(dims)}"
        raise DimensionError(msg)
    return _from_kets(dims, {"".join(str(d) for d in digits): 1.0})


def bell_state() -> QuantumState:
    """(|00> + |11>)/sqrt(2)."""
    a = 1 / math.sqrt(2)
    return _from_kets((2, 2), {"00": a, "11": a})


def singlet_state() -> QuantumState:
    """(|01> - |10>)/sqrt(2)."""
    a = 1 / math.sqrt(2)
    return _from_kets((2, 2), {"01": a, "10": -a})


def mix(states: Sequence[QuantumState], weights: Sequence[float]) -> QuantumState:
    """Convex combination of states sharing one shape."""
    if not states or len(states) != len(weights):
        msg = "mix needs one weight per state and at least one state"
        raise DimensionError(msg)
    if any(w < 0 for w in weights) or abs(math.fsum(weights) - 1.0) > PARAMETER_TOL:
        msg = f"Mixing weights must be nonnegative and sum to 1, got {list(weights)}"
        raise NormalizationError(msg)
    shape = states[0].shape
    if any(s.shape != shape for s in states):
        msg = "All mixed states must share the same subsystem shape"
        raise DimensionError(msg)
    rho = sum(
        (w * s.density_matrix() for w, s in zip(weights, states, strict=True)),
        start=np.zeros((shape.total, shape.total), dtype=np.complex128),
    )
    return QuantumState.from_density(rho, shape.dims)


def nonconvexity_pair() -> tuple[QuantumState, QuantumState]:
    """Singlet projector and |01><01|."""
    singlet = singlet_state()
    rho1 = QuantumState.from_density(singlet.density_matrix(), singlet.dims)
    rho2 = QuantumState.from_density(product_state((2, 2), (0, 1)).density_matrix(), (2, 2))
    return rho1, rho2


# --- Random sampling ---
def _check_seed(seed: int) -> None:
    if not 0 <= seed < _MAX_SEED:
        msg = f"Seed must be an unsigned 64-bit integer, got {seed}"
        raise EntanglionError(msg)


def haar_random_pure(shape: SubsystemShape | Sequence[int], seed: int) -> QuantumState:
    """Haar-random pure state: a normalized vector of standard complex Gaussians."""
    _check_seed(seed)
    dims = shape.dims if isinstance(shape, SubsystemShape) else tuple(shape)
    total = math.prod(dims)
    check_dimension(total)
    rng = np.random.Generator(np.random.PCG64(seed))
    vector = rng.standard_normal(total) + 1j * rng.standard_normal(total)
    return QuantumState.from_vector(vector / np.linalg.norm(vector), dims)


def haar_random_unitary(dim: int, seed: int | np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary of size ``dim``."""
    check_dimension(dim)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return np.asarray(unitary_group.rvs(dim, random_state=rng), dtype=np.complex128)


def local_unitary(shape: SubsystemShape | Sequence[int], seed: int) -> ComplexMatrix:
    """Tensor product of independent Haar unitaries, one per subsystem."""
    dims = shape.dims if isinstance(shape, SubsystemShape) else tuple(shape)
    rng = np.random.default_rng(seed)
    factors = [haar_random_unitary(d, rng) for d in dims]
    return functools.reduce(kron, factors)


# --- Catalog ---
class ReferenceValue(BaseModel):
    """A measure value a catalog state is known to take across one cut."""

    model_config = ConfigDict(frozen=True)

    measure: MeasureName
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    value: float = Field(..., ge=0)

    @property
    def label(self) -> str:
        """Compact ``measure[a|b]`` form."""
        a = ",".join(map(str, self.side_a))
        b = ",".join(map(str, self.side_b))
        return f"{self.measure}[{a}|{b}]"


def _ref(measure: MeasureName, side_a: int, side_b: Iterable[int], value: float) -> ReferenceValue:
    return ReferenceValue(measure=measure, side_a=(side_a,), side_b=tuple(side_b), value=value)


class CatalogEntry(BaseModel):
    """A named reference state."""

    model_config = ConfigDict(frozen=True)

    name: str
    dims: tuple[int, ...]
    description: str
    reference_values: tuple[ReferenceValue, ...] = ()
    expected_violations: tuple[TheoremId, ...] = ()
    builder: Callable[[], QuantumState] = Field(exclude=True)

    def build(self) -> QuantumState:
        """Construct the state."""
        return self.builder()


def _example1() -> QuantumState:
    return gsd_state(1 / math.sqrt(5), 0.0, math.sqrt(2 / 5), 1 / math.sqrt(5), 1 / math.sqrt(5))


def _df4_balanced() -> QuantumState:
    return df4_state(1 / math.sqrt(2), 1 / math.sqrt(2))


def _nonconvex_mixture() -> QuantumState:
    rho1, rho2 = nonconvexity_pair()
    return mix([rho1, rho2], [0.5, 0.5])


_CREN = MeasureName.CREN
_TANGLE = MeasureName.TANGLE

CATALOG: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry(
            name="example1",
            dims=(2, 2, 2),
            description="Generalized Schmidt form with l0=l3=l4=1/sqrt5, l2=sqrt(2/5), l1=0",
            reference_values=(
                _ref(_CREN, 0, (1, 2), 0.8),
                _ref(_CREN, 0, (1,), 0.4),
                _ref(_CREN, 0, (2,), 2 * math.sqrt(2) / 5),
            ),
            builder=_example1,
        ),
        CatalogEntry(
            name="df4",
            dims=(2, 2, 2, 2),
            description="Decoherence-free a|Psi_0> + b|Psi_1> with a=b=1/sqrt2",
            reference_values=(
                _ref(_CREN, 0, (1, 2, 3), 1.0),
                _ref(_CREN, 0, (1,), 0.0),
                _ref(_CREN, 0, (2,), math.sqrt(3) / 2),
                _ref(_CREN, 0, (3,), 0.0),
            ),
            builder=_df4_balanced,
        ),
        CatalogEntry(
            name="w",
            dims=(2, 2, 2),
            description="(|100> + |010> + |001>)/sqrt3",
            reference_values=(
                _ref(_CREN, 0, (1, 2), 2 * math.sqrt(2) / 3),
                _ref(_CREN, 0, (1,), 2 / 3),
                _ref(MeasureName.CRENOA, 0, (1,), 2 / 3),
                _ref(_TANGLE, 0, (1, 2), 8 / 9),
                _ref(_TANGLE, 0, (1,), 4 / 9),
            ),
            expected_violations=(TheoremId.THM8,),
            builder=w_state,
        ),
        CatalogEntry(
            name="antisym333",
            dims=(3, 3, 3),
            description="Totally antisymmetric three-qutrit state, tangle monogamy counterexample",
            reference_values=(
                _ref(_CREN, 0, (1, 2), 2.0),
                _ref(_CREN, 0, (1,), 1.0),
                _ref(_TANGLE, 0, (1, 2), 4 / 3),
                _ref(_TANGLE, 0, (1,), 1.0),
            ),
            expected_violations=(TheoremId.CKW,),
            builder=antisym_qutrit_state,
        ),
        CatalogEntry(
            name="cex322",
            dims=(3, 2, 2),
            description="(sqrt2|010> + sqrt2|101> + |200> + |211>)/sqrt6, tangle counterexample",
            reference_values=(
                _ref(_CREN, 0, (1, 2), 2.0),
                _ref(_CREN, 0, (1,), 2 * math.sqrt(2) / 3),
                _ref(_TANGLE, 0, (1, 2), 4 / 3),
                _ref(_TANGLE, 0, (1,), 8 / 9),
            ),
            expected_violations=(TheoremId.CKW,),
            builder=state_322,
        ),
        CatalogEntry(
            name="nonconvex",
            dims=(2, 2),
            description="Equal mixture of the singlet projector and |01><01|",
            reference_values=(
                _ref(_CREN, 0, (1,), 0.5),
                _ref(MeasureName.CRENOA, 0, (1,), math.sqrt(3) / 2),
                _ref(MeasureName.LCREN, 0, (1,), math.log2(1.5)),
            ),
            builder=_nonconvex_mixture,
        ),
    )
}


def catalog_entry(name: str) -> CatalogEntry:
    """Look up a catalog entry by name."""
    try:
        return CATALOG[name]
    except KeyError as err:
        msg = f"Unknown catalog state {name!r}; choose from {sorted(CATALOG)}"
        raise EntanglionError(msg) from err


def catalog_state(name: str) -> QuantumState:
    """Build the catalog state ``name``."""
    return catalog_entry(name).build()


# --- JSON I/O ---
def _pairs_to_complex(pairs: Sequence[tuple[float, float]]) -> npt.NDArray[np.complex128]:
    arr = np.asarray(pairs, dtype=np.float64)
    return arr[..., 0] + 1j * arr[..., 1]


def state_from_document(document: PureStateDocument | MixedStateDocument) -> QuantumState:
    """Convert a validated document into a QuantumState."""
    if isinstance(document, PureStateDocument):
        return QuantumState.from_vector(_pairs_to_complex(document.amplitudes), document.dims)
    rows = {len(row) for row in document.matrix}
    if len(rows) != 1:
        msg = "Density matrix rows must all have the same length"
        raise DimensionError(msg)
    return QuantumState.from_density(
        _pairs_to_complex([pair for row in document.matrix for pair in row]).reshape(
            len(document.matrix), -1
        ),
        document.dims,
    )


def state_to_document(state: QuantumState) -> PureStateDocument | MixedStateDocument:
    """Convert a QuantumState into its JSON document."""
    dims = list(state.dims)
    if state.is_pure:
        return PureStateDocument(
            dims=dims, amplitudes=[(float(z.real), float(z.imag)) for z in state.data]
        )
    return MixedStateDocument(
        dims=dims,
        matrix=[[(float(z.real), float(z.imag)) for z in row] for row in state.data],
    )


def load_state(source: str | Path) -> QuantumState:
    """Load a state from a JSON file or from ``catalog:NAME``."""
    text = str(source)
    if text.startswith("catalog:"):
        return catalog_state(text.removeprefix("catalog:"))
    path = Path(source)
    logger.debug("Loading state from %s", path)
    return state_from_document(validate_state_document(path.read_text(encoding="utf-8")))
