"""Time evolution and steady states of the population master equation.

Two independent routes to the steady state are provided and cross-validate
each other: a direct linear solve of M.P = 0 under the normalization
constraint (production path, cheap enough for dense load sweeps), and
explicit RK4 integration until the time derivative vanishes (validation
path and the dynamics API).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DegeneracyError,
    DomainError,
    ModelError,
    StepSizeError,
)
from .rate_network import RateMatrix

# Entries this far below zero are treated as solver roundoff and clamped;
# anything worse signals an invalid rate matrix.
_NEGATIVE_ROUNDOFF = 1e-12
_NEGATIVE_REJECT = 1e-9

_SUM_TOLERANCE = 1e-9

# steady_state_integrated advances this many RK4 steps between residual
# checks; convergence requires 10 consecutive passing checks.
_CHECK_INTERVAL = 16
_REQUIRED_QUIET_CHECKS = 10


@dataclass(frozen=True)
class PopulationState:
    """Occupation probabilities over the level basis at one instant.

    Entries are validated against roundoff-sized tolerance and stored
    clamped to [0, 1].
    """

    level_names: tuple[str, ...]
    populations: np.ndarray
    time_s: float = 0.0

    def __post_init__(self):
        raw = np.asarray(self.populations, dtype=float)
        if raw.shape != (len(self.level_names),):
            raise ModelError(
                f"expected {len(self.level_names)} populations, got shape {raw.shape}"
            )
        if np.any(raw < -_NEGATIVE_ROUNDOFF) or np.any(raw > 1.0 + _NEGATIVE_ROUNDOFF):
            raise ModelError(
                f"populations outside [0, 1] beyond roundoff: {raw.tolist()}"
            )
        total = float(raw.sum())
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ModelError(f"populations sum to {total!r}, expected 1")
        clamped = np.clip(raw, 0.0, 1.0)
        clamped.setflags(write=False)
        object.__setattr__(self, "populations", clamped)

    def population(self, level_name: str) -> float:
        return float(self.populations[self.level_names.index(level_name)])

    def as_dict(self) -> dict[str, float]:
        return {name: float(p) for name, p in zip(self.level_names, self.populations)}


@dataclass(frozen=True)
class SteadyStateReport:
    """Steady state plus the evidence that it deserves the name."""

    state: PopulationState
    method: str  # "direct" or "integrated"
    residual_per_s: float  # ||M.P||_inf of the returned state
    iterations_or_steps: int
    min_population_raw: float  # most negative component before clamping


def uniform_state(level_names: tuple[str, ...], time_s: float = 0.0) -> PopulationState:
    n = len(level_names)
    return PopulationState(tuple(level_names), np.full(n, 1.0 / n), time_s)


def _max_decay_rate(matrix: RateMatrix) -> float:
    return float(np.max(np.abs(np.diag(matrix.entries))))


def rk4_step_matrix(matrix: RateMatrix, dt_s: float) -> np.ndarray:
    """One-step propagator of classical RK4 for the linear system.

    For dP/dt = M.P the four-stage RK4 update collapses exactly to
    P_next = (I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24) . P, so repeated
    application reproduces fixed-step RK4 trajectories at matrix-vector
    cost.
    """
    hm = dt_s * matrix.entries
    identity = np.eye(matrix.dimension)
    hm2 = hm @ hm
    return identity + hm + hm2 / 2.0 + (hm2 @ hm) / 6.0 + (hm2 @ hm2) / 24.0


def integrate_rk4(
    matrix: RateMatrix, initial: PopulationState, dt_s: float, steps: int
) -> PopulationState:
    """Advance the populations with classical fixed-step RK4.

    The stability guard dt * max|diag(M)| <= 0.1 keeps the step deep inside
    the RK4 stability region for generator matrices (conservation form puts
    all eigenvalues within twice the largest diagonal decay rate).
    """
    if dt_s <= 0:
        raise DomainError(f"dt_s must be > 0, got {dt_s}")
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    if tuple(initial.level_names) != tuple(matrix.level_names):
        raise ModelError("initial state level names do not match the matrix")
    max_decay = _max_decay_rate(matrix)
    if dt_s * max_decay > 0.1:
        raise StepSizeError(
            f"dt_s={dt_s!r} violates the stability guard "
            f"dt * max|diag| <= 0.1; use dt_s <= {0.1 / max_decay!r}"
        )
    m = matrix.entries
    populations = np.array(initial.populations, dtype=float)
    for _ in range(steps):
        k1 = m @ populations
        k2 = m @ (populations + 0.5 * dt_s * k1)
        k3 = m @ (populations + 0.5 * dt_s * k2)
        k4 = m @ (populations + dt_s * k3)
        populations += (dt_s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return PopulationState(
        tuple(matrix.level_names), populations, initial.time_s + steps * dt_s
    )


def steady_state_direct(matrix: RateMatrix) -> SteadyStateReport:
    """Solve M.P = 0 with the normalization row sum(P) = 1.

    The last matrix row is replaced by all-ones (deterministic convention)
    and the system solved by LU with partial pivoting.  The residual is
    then checked against the original generator, and negative populations
    beyond roundoff are rejected as evidence of an invalid matrix.
    """
    n = matrix.dimension
    constrained = np.array(matrix.entries, dtype=float)
    constrained[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        solution = np.linalg.solve(constrained, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError(
            f"constrained rate matrix is singular ({exc}); "
            "the level network is effectively disconnected"
        ) from None

    scale = matrix.max_entry
    residual = float(np.max(np.abs(matrix.entries @ solution)))
    if scale > 0 and residual > 1e-10 * scale:
        raise DegeneracyError(
            f"steady-state residual {residual:.3e} exceeds 1e-10 * max|M| "
            f"({scale:.3e}); null space is not one-dimensional"
        )
    min_raw = float(solution.min())
    if min_raw < -_NEGATIVE_REJECT:
        raise ModelError(
            f"steady state has population {min_raw!r} < -{_NEGATIVE_REJECT}; "
            "the rate matrix is not a valid generator"
        )
    solution[solution < 0.0] = 0.0
    state = PopulationState(tuple(matrix.level_names), solution)
    return SteadyStateReport(state, "direct", residual, 1, min_raw)


def steady_state_integrated(
    matrix: RateMatrix,
    tol: float = 1e-10,
    initial: PopulationState | None = None,
    max_steps: int = 10**9,
) -> SteadyStateReport:
    """Integrate to the steady state and report how long it took.

    Fixed-step RK4 with dt = 0.05 / max|diag(M)| runs from the uniform
    state (or a caller-supplied one) until ||dP/dt||_inf stays below
    tol * max|M| for 10 consecutive checks.
    """
    if not 0.0 < tol <= 1e-4:
        raise DomainError(f"tol must lie in (0, 1e-4], got {tol}")
    if initial is None:
        initial = uniform_state(tuple(matrix.level_names))
    elif tuple(initial.level_names) != tuple(matrix.level_names):
        raise ModelError("initial state level names do not match the matrix")

    m = matrix.entries
    scale = matrix.max_entry
    populations = np.array(initial.populations, dtype=float)
    if scale == 0.0:
        # No dynamics at all: anything is steady.
        state = PopulationState(tuple(matrix.level_names), populations)
        return SteadyStateReport(state, "integrated", 0.0, 0, float(populations.min()))

    dt = 0.05 / _max_decay_rate(matrix)
    propagator = np.linalg.matrix_power(rk4_step_matrix(matrix, dt), _CHECK_INTERVAL)
    threshold = tol * scale
    quiet = 0
    steps = 0
    while True:
        residual = float(np.max(np.abs(m @ populations)))
        quiet = quiet + 1 if residual < threshold else 0
        if quiet >= _REQUIRED_QUIET_CHECKS:
            break
        if steps >= max_steps:
            raise ConvergenceError(
                f"no steady state within {max_steps} steps; "
                f"final residual {residual:.3e} (threshold {threshold:.3e})"
            )
        populations = propagator @ populations
        populations /= populations.sum()
        steps += _CHECK_INTERVAL
    min_raw = float(populations.min())
    populations = np.clip(populations, 0.0, None)
    populations /= populations.sum()
    state = PopulationState(tuple(matrix.level_names), populations)
    return SteadyStateReport(state, "integrated", residual, steps, min_raw)
