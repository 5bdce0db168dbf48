"""Convex-roof extension of pure-state functionals over pure-state decompositions.

A decomposition of ``rho = sum_j q_j |v_j><v_j|`` into ``m`` members is parameterized by an
``m x r`` isometry ``V``: the unnormalized members are ``|psi_k> = sum_j V_kj sqrt(q_j) |v_j>``.
Each iteration applies random unitary rotations to disjoint pairs of rows of ``V``, which keeps it
an isometry, and accepts a rotation only when it improves the objective.
"""

import logging
import math
from collections.abc import Callable

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from entanglion.config import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_RESTARTS,
    DEFAULT_ROOF_TOLERANCE,
    ISOMETRY_TOL,
    NEGLIGIBLE_WEIGHT,
    NORMALIZATION_TOL,
    RECONSTRUCTION_TOL,
)
from entanglion.errors import EntanglionError, IsometryError
from entanglion.states import QuantumState
from entanglion.tensor import ComplexMatrix, RealArray, hermitian_eigh

logger = logging.getLogger("entanglion.roof")

# Vectorized pure-state functional: (K, D) normalized rows -> (K,) values
type PureFunctional = Callable[[ComplexMatrix], RealArray]

_CANDIDATE_SCALES = np.array([0.25, 1.0, 4.0, 0.25, 1.0, 4.0])
_STEP_GROWTH = 1.3
_STEP_SHRINK = 0.93
_STEP_MIN = 1e-6
_STEP_MAX = math.pi
_REORTHONORMALIZE_EVERY = 100
_MIN_WINDOW = 50
_SUCCESS_RATE = 0.2
_ZERO_WEIGHT = 1e-300


class RoofConfig(BaseModel):
    """Settings of the roof search; ``ensemble_size_cap`` of None means rank squared."""

    model_config = ConfigDict(frozen=True)

    ensemble_size_cap: int | None = Field(None, ge=1)
    restarts: int = Field(DEFAULT_RESTARTS, ge=1)
    max_iterations: int = Field(DEFAULT_MAX_ITERATIONS, ge=1)
    tolerance: float = Field(DEFAULT_ROOF_TOLERANCE, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)


class Ensemble(BaseModel):
    """Pure-state decomposition: weights and normalized member vectors (one per row)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weights: np.ndarray  # type: ignore[type-arg]
    members: np.ndarray  # type: ignore[type-arg]

    @field_validator("weights", "members", mode="before")
    @classmethod
    def copy_array(cls, v: npt.ArrayLike) -> np.ndarray:  # type: ignore[type-arg]
        """Store read-only copies."""
        arr = np.array(v, copy=True)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_ensemble(self) -> "Ensemble":
        """Weights are a probability vector and members are unit vectors."""
        if self.weights.ndim != 1 or self.members.ndim != 2:  # noqa: PLR2004
            msg = "Ensemble needs 1-D weights and 2-D members"
            raise ValueError(msg)
        if self.weights.shape[0] != self.members.shape[0]:
            msg = "Ensemble needs one weight per member"
            raise ValueError(msg)
        if np.any(self.weights < 0) or abs(float(np.sum(self.weights)) - 1.0) > NORMALIZATION_TOL:
            msg = "Ensemble weights must be nonnegative and sum to 1"
            raise ValueError(msg)
        norms = np.linalg.norm(self.members, axis=1)
        if np.any(np.abs(norms - 1.0) > NORMALIZATION_TOL):
            msg = "Ensemble members must be normalized"
            raise ValueError(msg)
        return self

    def density_matrix(self) -> ComplexMatrix:
        """sum_k p_k |psi_k><psi_k|."""
        scaled = self.members * np.sqrt(self.weights)[:, None]
        return scaled.T @ scaled.conj()

    def reconstruction_error(self, rho: ComplexMatrix) -> float:
        """Max-entry distance between the ensemble average and ``rho``."""
        return float(np.max(np.abs(self.density_matrix() - rho)))

    def average(self, functional: PureFunctional) -> float:
        """Weighted average of a pure-state functional over the members."""
        return float(np.dot(self.weights, functional(self.members)))


class RoofResult(BaseModel):
    """Outcome of a roof search."""

    model_config = ConfigDict(frozen=True)

    value: float
    ensemble: Ensemble
    error_bound: float = Field(..., ge=0)
    converged: bool
    iterations: int = Field(..., ge=0)
    restart_values: tuple[float, ...]


def _support(rho: ComplexMatrix) -> tuple[RealArray, ComplexMatrix]:
    """Nonzero eigenvalues and their eigenvectors (as columns)."""
    values, vectors = hermitian_eigh(rho)
    rank = int(np.count_nonzero(values > 0))
    return values[:rank], vectors[:, :rank]


def decompose(rho: ComplexMatrix | QuantumState, V: ComplexMatrix) -> Ensemble:
    """Pure-state decomposition of ``rho`` generated by the isometry ``V`` (m x rank)."""
    matrix = rho.density_matrix() if isinstance(rho, QuantumState) else rho
    q, E = _support(matrix)
    rank = q.shape[0]
    if V.ndim != 2 or V.shape[1] != rank:  # noqa: PLR2004
        msg = f"V must have {rank} columns (the rank of rho), got shape {V.shape}"
        raise IsometryError(msg)
    deviation = float(np.max(np.abs(V.conj().T @ V - np.eye(rank))))
    if deviation > ISOMETRY_TOL:
        msg = f"V is not an isometry: max|V^dagger V - I| = {deviation:.3e}"
        raise IsometryError(msg)

    unnormalized = (V * np.sqrt(q)) @ E.T
    weights = np.sum(np.abs(unnormalized) ** 2, axis=1)
    keep = weights > NEGLIGIBLE_WEIGHT
    members = unnormalized[keep] / np.sqrt(weights[keep])[:, None]
    ensemble = Ensemble(weights=weights[keep] / np.sum(weights[keep]), members=members)

    error = ensemble.reconstruction_error(matrix)
    if error > RECONSTRUCTION_TOL:
        msg = f"Decomposition reconstructs rho only to {error:.3e}"
        raise EntanglionError(msg)
    return ensemble


def _contributions(W: ComplexMatrix, functional: PureFunctional) -> RealArray:
    """p_k f(psi_k / sqrt p_k) for every row of ``W`` (any leading batch shape)."""
    weights = np.sum(np.abs(W) ** 2, axis=-1)
    present = weights > _ZERO_WEIGHT
    scale = np.where(present, np.sqrt(np.where(present, weights, 1.0)), 1.0)
    normalized = W / scale[..., None]
    flat = normalized.reshape(-1, W.shape[-1])
    values = np.asarray(functional(flat), dtype=np.float64).reshape(weights.shape)
    return np.where(present, weights * values, 0.0)


def _initial_isometries(
    m: int, rank: int, restarts: int, rng: np.random.Generator
) -> ComplexMatrix:
    """Restart 0 is the eigen-ensemble; the others are random isometries."""
    V = np.empty((restarts, m, rank), dtype=np.complex128)
    V[0] = np.eye(m, rank)
    if restarts > 1:
        gauss = rng.standard_normal((restarts - 1, m, rank)) + 1j * rng.standard_normal(
            (restarts - 1, m, rank)
        )
        V[1:] = np.linalg.qr(gauss)[0]
    return V


def _reorthonormalize(V: ComplexMatrix) -> ComplexMatrix:
    """Pull a drifting isometry back with QR, keeping the column phases fixed."""
    Q, R = np.linalg.qr(V)
    diagonal = np.diagonal(R, axis1=-2, axis2=-1)
    phases = np.where(np.abs(diagonal) > 0, diagonal / np.abs(diagonal), 1.0)
    return Q * phases[..., None, :]


def _rotate_rows(
    X: ComplexMatrix,
    batch: npt.NDArray[np.intp],
    k: npt.NDArray[np.intp],
    l: npt.NDArray[np.intp],  # noqa: E741
    cos: RealArray,
    sin_phase: ComplexMatrix,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Rotated rows (k, l) of ``X[batch]`` for every candidate angle (last axis of cos)."""
    xk = X[batch, k][..., None, :]
    xl = X[batch, l][..., None, :]
    c = cos[..., None]
    s = sin_phase[..., None]
    return c * xk - s * xl, np.conj(s) * xk + c * xl


def _optimize(
    state: QuantumState,
    functional: PureFunctional,
    config: RoofConfig,
    sign: float,
) -> RoofResult:
    """Minimize ``sign * average`` over decompositions; ``sign=-1`` maximizes."""
    rho = state.density_matrix()
    q, E = _support(rho)
    rank = q.shape[0]

    if rank == 1:
        ensemble = Ensemble(weights=np.ones(1), members=E.T.copy())
        value = ensemble.average(functional)
        return RoofResult(
            value=value,
            ensemble=ensemble,
            error_bound=0.0,
            converged=True,
            iterations=0,
            restart_values=(value,),
        )

    m = config.ensemble_size_cap if config.ensemble_size_cap is not None else rank * rank
    if m < rank:
        msg = f"ensemble_size_cap {m} is below the rank {rank} of the state"
        raise EntanglionError(msg)

    rng = np.random.default_rng(config.seed)
    restarts = config.restarts
    # Disjoint row pairs rotated per iteration; an odd ensemble leaves one row idle.
    pairs = m // 2
    A = (E * np.sqrt(q)).T
    V = _initial_isometries(m, rank, restarts, rng)
    W = V @ A
    contrib = _contributions(W, functional)
    score = sign * contrib.sum(axis=1)

    window = max(_MIN_WINDOW, math.ceil(m * (m - 1) / pairs))
    history = np.empty((config.max_iterations + 1, restarts))
    history[0] = score
    step = np.full(restarts, 0.5)
    active = np.ones(restarts, dtype=bool)
    batch = np.arange(restarts)[:, None]
    labels = np.tile(np.arange(m), (restarts, 1))
    n_candidates = _CANDIDATE_SCALES.shape[0]
    iterations = 0

    for it in range(1, config.max_iterations + 1):
        iterations = it
        shuffled = rng.permuted(labels, axis=1)
        k = shuffled[:, 0 : 2 * pairs : 2]
        l = shuffled[:, 1 : 2 * pairs : 2]  # noqa: E741
        theta = step[:, None, None] * _CANDIDATE_SCALES * rng.standard_normal(
            (restarts, pairs, n_candidates)
        )
        phi = rng.uniform(0.0, 2 * math.pi, size=(restarts, pairs, n_candidates))
        cos = np.cos(theta)
        sin_phase = np.exp(1j * phi) * np.sin(theta)

        new_k, new_l = _rotate_rows(W, batch, k, l, cos, sin_phase)
        new_contrib = _contributions(np.stack([new_k, new_l], axis=-2), functional).sum(axis=-1)
        old_contrib = contrib[batch, k] + contrib[batch, l]
        delta = sign * (new_contrib - old_contrib[..., None])
        best = np.argmin(delta, axis=-1)
        gain = np.take_along_axis(delta, best[..., None], axis=-1)[..., 0]
        improved = active[:, None] & (gain < 0)

        if np.any(improved):
            r, p = np.nonzero(improved)
            chosen = best[r, p]
            rk, rl = k[r, p], l[r, p]
            vk, vl = _rotate_rows(V, r, rk, rl, cos[r, p], sin_phase[r, p])
            picked = np.arange(r.size)
            V[r, rk] = vk[picked, chosen]
            V[r, rl] = vl[picked, chosen]
            W[r, rk] = new_k[r, p, chosen]
            W[r, rl] = new_l[r, p, chosen]
            updated = _contributions(np.stack([W[r, rk], W[r, rl]], axis=1), functional)
            contrib[r, rk] = updated[:, 0]
            contrib[r, rl] = updated[:, 1]
        success = improved.mean(axis=1) >= _SUCCESS_RATE
        step = np.where(success, step * _STEP_GROWTH, step * _STEP_SHRINK)
        step = np.clip(step, _STEP_MIN, _STEP_MAX)

        if it % _REORTHONORMALIZE_EVERY == 0:
            V = _reorthonormalize(V)
            W = V @ A
            contrib = _contributions(W, functional)

        score = sign * contrib.sum(axis=1)
        history[it] = score
        if it >= window:
            stalled = history[it - window] - score < config.tolerance
            active &= ~stalled
            if not np.any(active):
                break

    V = _reorthonormalize(V)
    final = sign * _contributions(V @ A, functional).sum(axis=1)
    order = np.argsort(final, kind="stable")
    best_index = int(order[0])
    top = final[order[: min(3, restarts)]]
    error_bound = float(top[-1] - top[0])
    converged = not bool(active[best_index])
    if not converged:
        start = max(0, iterations - window)
        lag = float(history[start, best_index] - history[iterations, best_index])
        error_bound += max(lag, 0.0)
        logger.warning(
            "Roof search did not converge after %d iterations (last-window improvement %.3e)",
            iterations,
            lag,
        )

    ensemble = decompose(rho, V[best_index])
    value = ensemble.average(functional)
    logger.debug(
        "Roof search: rank=%d m=%d restarts=%d iterations=%d best=%.12g spread=%.3e",
        rank,
        m,
        restarts,
        iterations,
        value,
        error_bound,
    )
    return RoofResult(
        value=value,
        ensemble=ensemble,
        error_bound=error_bound,
        converged=converged,
        iterations=iterations,
        restart_values=tuple(float(sign * v) for v in final),
    )


def roof_minimize(
    state: QuantumState,
    functional: PureFunctional,
    config: RoofConfig | None = None,
) -> RoofResult:
    """Convex roof: minimal average of ``functional`` over pure-state decompositions."""
    return _optimize(state, functional, config or RoofConfig(), sign=1.0)


def roof_maximize(
    state: QuantumState,
    functional: PureFunctional,
    config: RoofConfig | None = None,
) -> RoofResult:
    """Concave roof: maximal average of ``functional`` over pure-state decompositions."""
    return _optimize(state, functional, config or RoofConfig(), sign=-1.0)
