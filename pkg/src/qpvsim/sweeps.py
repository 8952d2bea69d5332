"""Curve generation and fitting: I-V sweeps, maximum-power search over the
load rate, pump-rate sweeps, and the hyperbolic saturation fit.

The load sweep walks log Gamma rather than voltage: V(Gamma) is the
natural parameterization of "turning the external resistance from zero to
infinity" and needs no root finding.  Sweep points are independent solves
and may run concurrently; the QPV_THREADS environment variable caps the
worker count and has no effect on the results (tasks are pure and results
are assembled in grid order).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dynamics import steady_state_direct
from .errors import DomainError, FitError, SweepError, UndefinedVoltageError
from .observables import OperatingPoint, current, efficiency, voltage
from .rate_network import LevelSystem, build_rate_matrix

SystemTemplate = Callable[[float], LevelSystem]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Coarse bracketing grid for the maximum-power search over the load rate.
_COARSE_LO = 1e3
_COARSE_HI = 1e18
_COARSE_POINTS = 60


@dataclass(frozen=True)
class IVCurve:
    """Operating points of one pump rate, ordered by ascending voltage."""

    pump_rate_per_s: float
    points: tuple[OperatingPoint, ...]
    source_level: str
    sink_level: str


@dataclass(frozen=True)
class PumpSweepPoint:
    """Maximum-power operating summary at one pump rate."""

    pump_rate_per_s: float
    max_power_w: float
    v_mpp_v: float
    gamma_mpp_per_s: float
    efficiency: float
    multimodal: bool = False


@dataclass(frozen=True)
class PumpSweep:
    points: tuple[PumpSweepPoint, ...]


@dataclass(frozen=True)
class SaturationFit:
    """Parameters of P(W) = a W / (W + b) with a relative-residual metric."""

    a: float
    b: float
    rms_residual: float
    iterations: int
    converged: bool


def _thread_count() -> int:
    env = os.environ.get("QPV_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"QPV_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _map_points(fn, items):
    workers = _thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _materialize(template: SystemTemplate | LevelSystem, pump_rate_per_s: float | None) -> LevelSystem:
    if isinstance(template, LevelSystem):
        if pump_rate_per_s is None:
            return template
        return template.with_total_pump_rate(pump_rate_per_s)
    if pump_rate_per_s is None:
        raise DomainError("a pump rate is required to materialize a system template")
    return template(pump_rate_per_s)


def evaluate_operating_point(
    system: LevelSystem, gamma_load_per_s: float
) -> OperatingPoint | None:
    """Steady-state observables at one load rate; None if V is undefined.

    An undefined voltage (an electrode population underflowing to zero)
    is the open/short-circuit limit, which sweeps simply drop.
    """
    loaded = system.with_gamma_load(gamma_load_per_s)
    report = steady_state_direct(build_rate_matrix(loaded))
    amps = current(report.state, loaded.extraction)
    try:
        volts = voltage(report.state, loaded)
    except UndefinedVoltageError:
        return None
    return OperatingPoint(gamma_load_per_s, amps, volts, amps * volts, report.state)


def iv_sweep(
    template: SystemTemplate | LevelSystem,
    pump_rate_per_s: float | None,
    gamma_min_per_s: float,
    gamma_max_per_s: float,
    n_points: int,
) -> IVCurve:
    """Trace the I-V curve over a log-spaced load grid."""
    if not 0 < gamma_min_per_s < gamma_max_per_s:
        raise DomainError(
            f"need 0 < gamma_min < gamma_max, got {gamma_min_per_s}, {gamma_max_per_s}"
        )
    if n_points < 10:
        raise DomainError(f"n_points must be >= 10, got {n_points}")
    system = _materialize(template, pump_rate_per_s)
    grid = np.logspace(
        math.log10(gamma_min_per_s), math.log10(gamma_max_per_s), n_points
    )
    results = _map_points(lambda g: evaluate_operating_point(system, float(g)), grid)
    points = [p for p in results if p is not None]
    if not points:
        raise SweepError("no sweep point produced a defined voltage")
    points.sort(key=lambda p: p.voltage_v)
    return IVCurve(
        system.total_pump_rate(),
        tuple(points),
        system.extraction.source,
        system.extraction.sink,
    )


def _power_at(system: LevelSystem, log_gamma: float) -> float:
    point = evaluate_operating_point(system, 10.0**log_gamma)
    return -math.inf if point is None else point.power_w


def _golden_max(fn, lo: float, hi: float, rel_tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal fn on [lo, hi]."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > rel_tol * max(1.0, (abs(lo) + abs(hi)) / 2.0):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fn(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def max_power_point(
    template: SystemTemplate | LevelSystem,
    pump_rate_per_s: float | None,
    rel_tol: float = 1e-6,
) -> PumpSweepPoint:
    """Locate the maximum of P(log Gamma) for one pump rate.

    A 60-point coarse scan over [1e3, 1e18] s^-1 brackets the peak, then
    golden-section refinement narrows it.  A coarse scan showing several
    local maxima is flagged as multimodal; the global grid peak is refined
    regardless so the result is still the best known operating point.
    """
    system = _materialize(template, pump_rate_per_s)
    grid = np.linspace(math.log10(_COARSE_LO), math.log10(_COARSE_HI), _COARSE_POINTS)
    powers = _map_points(lambda x: _power_at(system, float(x)), grid)
    best = int(np.argmax(powers))
    if not math.isfinite(powers[best]):
        raise SweepError("no load produced a defined operating point")

    local_maxima = 0
    for i in range(1, len(grid) - 1):
        if math.isfinite(powers[i]) and powers[i] > powers[i - 1] and powers[i] > powers[i + 1]:
            local_maxima += 1
    multimodal = local_maxima > 1

    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    x_ref, p_ref = _golden_max(lambda x: _power_at(system, x), lo, hi, rel_tol)
    # Refinement never loses ground against the coarse scan.
    if powers[best] > p_ref:
        x_ref, p_ref = float(grid[best]), float(powers[best])

    gamma_mpp = 10.0**x_ref
    point = evaluate_operating_point(system, gamma_mpp)
    if point is None:
        raise SweepError("maximum-power point has an undefined voltage")
    total_pump = system.total_pump_rate()
    eta = (
        efficiency(max(point.power_w, 0.0), total_pump, system.pump_energy_ev())
        if total_pump > 0
        else math.nan
    )
    return PumpSweepPoint(
        total_pump, point.power_w, point.voltage_v, gamma_mpp, eta, multimodal
    )


def pump_sweep(
    template: SystemTemplate | LevelSystem,
    wp_min_per_s: float,
    wp_max_per_s: float,
    n_points: int,
) -> PumpSweep:
    """Maximum power and efficiency across a log-spaced pump-rate grid."""
    if not 0 < wp_min_per_s < wp_max_per_s:
        raise DomainError(
            f"need 0 < wp_min < wp_max, got {wp_min_per_s}, {wp_max_per_s}"
        )
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    grid = np.logspace(math.log10(wp_min_per_s), math.log10(wp_max_per_s), n_points)
    points = _map_points(lambda w: max_power_point(template, float(w)), grid)
    return PumpSweep(tuple(points))


def _saturation_model(wp: np.ndarray, a: float, b: float) -> np.ndarray:
    return a * wp / (wp + b)


def fit_saturation_arrays(
    wp: Sequence[float], power: Sequence[float]
) -> SaturationFit:
    """Least-squares fit of P = a W/(W+b) on relative residuals.

    Positivity of both parameters is enforced by optimizing (log a, log b)
    with a Levenberg-Marquardt loop; residuals are model/data - 1 so the
    fit weighs every decade of a log-spaced sweep equally.
    """
    wp = np.asarray(wp, dtype=float)
    power = np.asarray(power, dtype=float)
    if wp.shape != power.shape or wp.ndim != 1:
        raise FitError("wp and power must be 1-d arrays of equal length")
    if len(wp) < 3:
        raise FitError(f"need at least 3 points, got {len(wp)}")
    if np.any(wp <= 0) or np.any(power <= 0):
        raise FitError("fit requires strictly positive pump rates and powers")
    if np.allclose(power, power[0], rtol=1e-14, atol=0.0):
        raise FitError("degenerate data: all powers equal")

    theta = np.array([math.log(float(power.max())), math.log(float(np.median(wp)))])

    def residuals(th):
        a, b = math.exp(th[0]), math.exp(th[1])
        return _saturation_model(wp, a, b) / power - 1.0

    def jacobian(th):
        a, b = math.exp(th[0]), math.exp(th[1])
        model = _saturation_model(wp, a, b)
        d_log_a = model / power
        d_log_b = -model * b / (wp + b) / power
        return np.column_stack([d_log_a, d_log_b])

    res = residuals(theta)
    cost = float(res @ res)
    damping = 1e-3
    converged = False
    iterations = 0
    for iterations in range(1, 201):
        jac = jacobian(theta)
        hessian = jac.T @ jac
        gradient = jac.T @ res
        stepped = False
        for _ in range(50):
            damped = hessian + damping * np.diag(np.diag(hessian))
            try:
                delta = np.linalg.solve(damped, -gradient)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            trial = theta + delta
            trial_res = residuals(trial)
            trial_cost = float(trial_res @ trial_res)
            if trial_cost <= cost:
                theta, res, cost = trial, trial_res, trial_cost
                damping = max(damping / 3.0, 1e-12)
                stepped = True
                break
            damping *= 3.0
        if not stepped:
            break
        if np.linalg.norm(delta) <= 1e-10 * (1.0 + np.linalg.norm(theta)):
            converged = True
            break

    a, b = math.exp(theta[0]), math.exp(theta[1])
    rms = float(np.sqrt(np.mean(res**2)))
    return SaturationFit(a, b, rms, iterations, converged)


def fit_saturation(sweep: PumpSweep) -> SaturationFit:
    return fit_saturation_arrays(
        [p.pump_rate_per_s for p in sweep.points],
        [p.max_power_w for p in sweep.points],
    )
