"""Photovoltaic observables derived from steady-state populations.

The extraction channel source -> sink plays the role of the external load:
its throughput sets the current, and the populations of its two electrodes
set the voltage through the usual chemical-potential logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import PopulationState
from .errors import DomainError, UndefinedVoltageError
from .radiometry import E_CHARGE_C, K_B_EV_PER_K
from .rate_network import Extraction, LevelSystem


@dataclass(frozen=True)
class OperatingPoint:
    """One point of an I-V / P-V curve at a fixed load rate."""

    gamma_load_per_s: float
    current_a: float
    voltage_v: float
    power_w: float
    populations: PopulationState


@dataclass(frozen=True)
class EfficiencyPoint:
    """Converted fraction of the pump photon power at one pump rate."""

    pump_rate_per_s: float
    max_power_w: float
    efficiency: float
    band_gap_ev: float


def current(state: PopulationState, extraction: Extraction) -> float:
    """Load current I = e * Gamma * P_source in amperes."""
    return (
        E_CHARGE_C
        * extraction.gamma_load_per_s
        * state.population(extraction.source)
    )


def voltage(state: PopulationState, system: LevelSystem) -> float:
    """Cell voltage (E_source - E_sink + kT ln(P_source/P_sink)) / e.

    Energies are in eV so the numerical value is already in volts.  The
    temperature is the system's voltage_temperature_k (the cold bath by
    default, since that is where the cell sits).
    """
    ext = system.extraction
    p_source = state.population(ext.source)
    p_sink = state.population(ext.sink)
    if p_source <= 0.0 or p_sink <= 0.0:
        raise UndefinedVoltageError(
            f"voltage undefined: P[{ext.source}]={p_source}, P[{ext.sink}]={p_sink}"
        )
    thermal = K_B_EV_PER_K * system.voltage_temperature_k
    return (
        system.energy(ext.source)
        - system.energy(ext.sink)
        + thermal * math.log(p_source / p_sink)
    )


def efficiency(max_power_w: float, pump_rate_per_s: float, band_gap_ev: float) -> float:
    """Output power over pump photon power, P / (E_gap * W_p).

    The input power is the absorbed photon energy times the absorption
    rate, converted to watts.
    """
    if pump_rate_per_s <= 0:
        raise DomainError(f"pump_rate_per_s must be > 0, got {pump_rate_per_s}")
    if max_power_w < 0:
        raise DomainError(f"max_power_w must be >= 0, got {max_power_w}")
    if band_gap_ev <= 0:
        raise DomainError(f"band_gap_ev must be > 0, got {band_gap_ev}")
    return max_power_w / (band_gap_ev * E_CHARGE_C * pump_rate_per_s)
