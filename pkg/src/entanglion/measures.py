"""Bipartite entanglement measures: negativity family, concurrence, tangle and their roofs.

Every measure takes a ``QuantumState`` and a ``Bipartition``. Subsystems outside the cut are
traced out first, so ``A | B_1`` on a three-party state is measured on the reduced pair.
Pure inputs use Schmidt coefficients, two-qubit mixed inputs use closed forms and any other
mixed input falls back to the roof optimizer.
"""

import functools
import logging
import math
from collections.abc import Callable, Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from entanglion.errors import BipartitionError, DimensionError
from entanglion.models.measures import MeasureMethod, MeasureName, MeasureValue
from entanglion.roof import PureFunctional, RoofConfig, RoofResult, roof_maximize, roof_minimize
from entanglion.states import QuantumState
from entanglion.tensor import (
    ComplexMatrix,
    RealArray,
    bipartite_coefficients,
    hermitian_eigenvalues,
    partial_transpose,
    psd_sqrt,
    trace_norm,
)

logger = logging.getLogger("entanglion.measures")

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    dtype=np.complex128,
)
_TWO_QUBITS = (2, 2)


class Bipartition(BaseModel):
    """Cut ``side_a | side_b``; subsystems in neither side are traced out."""

    model_config = ConfigDict(frozen=True)

    side_a: frozenset[int]
    side_b: frozenset[int]

    @model_validator(mode="after")
    def validate_sides(self) -> "Bipartition":
        """Both sides are nonempty, disjoint and hold nonnegative indices."""
        if not self.side_a or not self.side_b:
            msg = "Both sides of a cut must be nonempty"
            raise ValueError(msg)
        if self.side_a & self.side_b:
            msg = f"Cut sides overlap on {sorted(self.side_a & self.side_b)}"
            raise ValueError(msg)
        if min(self.side_a | self.side_b) < 0:
            msg = "Subsystem indices must be nonnegative"
            raise ValueError(msg)
        return self

    @classmethod
    def split(cls, focus: int | Iterable[int], others: Iterable[int]) -> "Bipartition":
        """Cut ``focus | others``."""
        side_a = frozenset([focus]) if isinstance(focus, int) else frozenset(focus)
        return cls(side_a=side_a, side_b=frozenset(others))

    @classmethod
    def focus_rest(cls, focus: int, size: int) -> "Bipartition":
        """Cut ``focus | everything else`` on a ``size``-party system."""
        return cls.split(focus, (i for i in range(size) if i != focus))

    @property
    def involved(self) -> list[int]:
        """Subsystems on either side, ascending."""
        return sorted(self.side_a | self.side_b)

    @property
    def label(self) -> str:
        """Human-readable ``a|b`` form, e.g. ``0|1,2``."""
        a = ",".join(str(i) for i in sorted(self.side_a))
        b = ",".join(str(i) for i in sorted(self.side_b))
        return f"{a}|{b}"

    def validate_for(self, state: QuantumState) -> None:
        """Raise BipartitionError if the cut refers to subsystems the state lacks."""
        size = state.shape.size
        if max(self.side_a | self.side_b) >= size:
            msg = f"Cut {self.label} does not fit a {size}-party state"
            raise BipartitionError(msg)


def _restrict(state: QuantumState, cut: Bipartition) -> tuple[QuantumState, list[int]]:
    """Reduced state on the cut and the positions of side A within it."""
    cut.validate_for(state)
    involved = cut.involved
    reduced = state.reduce(involved)
    a_positions = [involved.index(i) for i in sorted(cut.side_a)]
    return reduced, a_positions


def _schmidt(state: QuantumState, a_positions: Sequence[int]) -> RealArray:
    coeffs = bipartite_coefficients(state.data[None, :], state.dims, a_positions)
    return np.linalg.svd(coeffs, compute_uv=False)[0]


# --- Vectorized pure-state functionals ---
def pure_negativity(
    vectors: ComplexMatrix,
    dims: Sequence[int],
    a_axes: Sequence[int],
) -> RealArray:
    """Negativity ``(sum of Schmidt coefficients)^2 - 1`` of each normalized row."""
    singular = np.linalg.svd(bipartite_coefficients(vectors, dims, a_axes), compute_uv=False)
    return np.sum(singular, axis=-1) ** 2 - 1.0


def pure_sqrt_tangle(
    vectors: ComplexMatrix,
    dims: Sequence[int],
    a_axes: Sequence[int],
) -> RealArray:
    """Square root of ``2(1 - tr rho_A^2)`` for each normalized row."""
    singular = np.linalg.svd(bipartite_coefficients(vectors, dims, a_axes), compute_uv=False)
    purity = np.sum(singular**4, axis=-1)
    return np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None))


type _CutFunctional = Callable[[ComplexMatrix, Sequence[int], Sequence[int]], RealArray]


def _bound(functional: _CutFunctional, state: QuantumState, a_pos: Sequence[int]) -> PureFunctional:
    return functools.partial(functional, dims=state.dims, a_axes=tuple(a_pos))


# --- Closed forms ---
def _negativity_on(reduced: QuantumState, a_pos: Sequence[int], name: MeasureName) -> MeasureValue:
    if reduced.is_pure:
        value = float(np.sum(_schmidt(reduced, a_pos)) ** 2 - 1.0)
        method = MeasureMethod.PURE_STATE
    else:
        value = trace_norm(partial_transpose(reduced.data, reduced.shape, a_pos)) - 1.0
        method = MeasureMethod.CLOSED_FORM
    return MeasureValue(name=name, value=max(value, 0.0), method=method)


def negativity(state: QuantumState, cut: Bipartition) -> MeasureValue:
    """``||rho^{T_A}||_1 - 1``."""
    reduced, a_pos = _restrict(state, cut)
    return _negativity_on(reduced, a_pos, MeasureName.NEGATIVITY)


def log_negativity(state: QuantumState, cut: Bipartition) -> MeasureValue:
    """``log2 ||rho^{T_A}||_1`` in bits."""
    base = negativity(state, cut)
    return MeasureValue(
        name=MeasureName.LOG_NEGATIVITY,
        value=max(math.log2(base.value + 1.0), 0.0),
        method=base.method,
    )


def _two_qubit_rho(state: QuantumState) -> ComplexMatrix:
    if state.dims != _TWO_QUBITS:
        msg = f"Two-qubit closed forms need dims (2, 2), got {state.dims}"
        raise DimensionError(msg)
    return state.density_matrix()


def _wootters_roots(rho: ComplexMatrix) -> RealArray:
    """Descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy)."""
    flipped = _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    root = psd_sqrt(rho)
    eigenvalues = hermitian_eigenvalues(root @ flipped @ root)
    return np.sqrt(np.clip(eigenvalues, 0.0, None))


def concurrence_2qubit(state: QuantumState) -> MeasureValue:
    """Wootters concurrence ``max(0, mu_1 - mu_2 - mu_3 - mu_4)``."""
    mu = _wootters_roots(_two_qubit_rho(state))
    return MeasureValue(
        name=MeasureName.CONCURRENCE,
        value=max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3])),
        method=MeasureMethod.CLOSED_FORM,
    )


def concurrence_assist_2qubit(state: QuantumState) -> MeasureValue:
    """Concurrence of assistance ``sum_i mu_i``."""
    mu = _wootters_roots(_two_qubit_rho(state))
    return MeasureValue(
        name=MeasureName.CONCURRENCE_ASSIST,
        value=float(np.sum(mu)),
        method=MeasureMethod.CLOSED_FORM,
    )


# --- Roof-based measures ---
def _from_roof(name: MeasureName, result: RoofResult) -> MeasureValue:
    return MeasureValue(
        name=name,
        value=max(result.value, 0.0),
        method=MeasureMethod.ROOF_OPTIMIZER,
        error_bound=result.error_bound,
        converged=result.converged,
    )


def cren(state: QuantumState, cut: Bipartition, config: RoofConfig | None = None) -> MeasureValue:
    """Convex-roof extended negativity."""
    reduced, a_pos = _restrict(state, cut)
    if reduced.is_pure:
        return _negativity_on(reduced, a_pos, MeasureName.CREN)
    if reduced.dims == _TWO_QUBITS:
        return concurrence_2qubit(reduced).model_copy(update={"name": MeasureName.CREN})
    result = roof_minimize(reduced, _bound(pure_negativity, reduced, a_pos), config)
    return _from_roof(MeasureName.CREN, result)


def crenoa(state: QuantumState, cut: Bipartition, config: RoofConfig | None = None) -> MeasureValue:
    """Convex-roof extended negativity of assistance."""
    reduced, a_pos = _restrict(state, cut)
    if reduced.is_pure:
        return _negativity_on(reduced, a_pos, MeasureName.CRENOA)
    if reduced.dims == _TWO_QUBITS:
        return concurrence_assist_2qubit(reduced).model_copy(update={"name": MeasureName.CRENOA})
    result = roof_maximize(reduced, _bound(pure_negativity, reduced, a_pos), config)
    return _from_roof(MeasureName.CRENOA, result)


def to_logarithmic(base: MeasureValue, name: MeasureName) -> MeasureValue:
    """``log2(value + 1)`` with the error bound carried through the logarithm."""
    value = math.log2(base.value + 1.0)
    lower = max(base.value - base.error_bound, 0.0)
    error = base.error_bound / ((lower + 1.0) * math.log(2))
    return MeasureValue(
        name=name,
        value=max(value, 0.0),
        method=base.method,
        error_bound=error,
        converged=base.converged,
    )


def lcren(state: QuantumState, cut: Bipartition, config: RoofConfig | None = None) -> MeasureValue:
    """Logarithmic CREN, ``log2(cren + 1)`` in bits."""
    return to_logarithmic(cren(state, cut, config), MeasureName.LCREN)


def lcrenoa(
    state: QuantumState, cut: Bipartition, config: RoofConfig | None = None
) -> MeasureValue:
    """Logarithmic CRENoA, ``log2(crenoa + 1)`` in bits."""
    return to_logarithmic(crenoa(state, cut, config), MeasureName.LCRENOA)


def tangle(state: QuantumState, cut: Bipartition, config: RoofConfig | None = None) -> MeasureValue:
    """Tangle: ``2(1 - tr rho_A^2)`` for pure states, its convex roof otherwise."""
    reduced, a_pos = _restrict(state, cut)
    if reduced.is_pure:
        purity = float(np.sum(_schmidt(reduced, a_pos) ** 4))
        return MeasureValue(
            name=MeasureName.TANGLE,
            value=max(2.0 * (1.0 - purity), 0.0),
            method=MeasureMethod.PURE_STATE,
        )
    if reduced.dims == _TWO_QUBITS:
        c = concurrence_2qubit(reduced).value
        return MeasureValue(name=MeasureName.TANGLE, value=c * c, method=MeasureMethod.CLOSED_FORM)
    result = roof_minimize(reduced, _bound(pure_sqrt_tangle, reduced, a_pos), config)
    root = max(result.value, 0.0)
    return MeasureValue(
        name=MeasureName.TANGLE,
        value=root * root,
        method=MeasureMethod.ROOF_OPTIMIZER,
        error_bound=2 * root * result.error_bound + result.error_bound**2,
        converged=result.converged,
    )


def all_measures(
    state: QuantumState,
    cut: Bipartition,
    config: RoofConfig | None = None,
) -> list[MeasureValue]:
    """Every applicable measure on one cut, each roof evaluated once."""
    reduced, a_pos = _restrict(state, cut)
    local = Bipartition.split(a_pos, (i for i in range(reduced.shape.size) if i not in a_pos))
    cren_value = cren(reduced, local, config)
    crenoa_value = crenoa(reduced, local, config)
    values = [
        negativity(reduced, local),
        log_negativity(reduced, local),
        cren_value,
        crenoa_value,
        to_logarithmic(cren_value, MeasureName.LCREN),
        to_logarithmic(crenoa_value, MeasureName.LCRENOA),
        tangle(reduced, local, config),
    ]
    if reduced.dims == _TWO_QUBITS:
        values[2:2] = [concurrence_2qubit(reduced), concurrence_assist_2qubit(reduced)]
    logger.debug("Computed %d measures on cut %s", len(values), cut.label)
    return values
