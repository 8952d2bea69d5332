"""Thermal-photon statistics and blackbody photon-flux calibration.

Energies are carried in eV, temperatures in kelvin, and rates in s^-1
throughout the package.  The photon-flux integral ties a phenomenological
pump rate to the physical irradiance of a blackbody source, which is what
makes the pump-rate axis of the sweep results physically meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Fundamental constants in the eV unit system, derived from the exact SI
# defining values (k_B = 1.380649e-23 J/K, h = 6.62607015e-34 J s,
# e = 1.602176634e-19 C, c = 299792458 m/s).  Full double precision is
# kept so that h == 2*pi*hbar holds to machine accuracy.
K_B_EV_PER_K = 8.617333262145179e-05  # Boltzmann constant [eV/K]
H_EV_S = 4.135667696923859e-15        # Planck constant [eV s]
HBAR_EV_S = 6.582119569509066e-16     # reduced Planck constant [eV s]
C_M_PER_S = 2.99792458e8              # speed of light [m/s]
E_CHARGE_C = 1.602176634e-19          # elementary charge [C]

# exp(x) overflows past ~709; above this cutoff 1/(e^x - 1) is replaced by
# the asymptotic e^-x, which underflows to 0 harmlessly.
_EXP_CUTOFF = 700.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants used by the simulator, in eV/K/s/m units."""

    k_b_ev_per_k: float = K_B_EV_PER_K
    hbar_ev_s: float = HBAR_EV_S
    h_ev_s: float = H_EV_S
    c_m_per_s: float = C_M_PER_S
    e_charge_c: float = E_CHARGE_C


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class Bath:
    """A thermal reservoir: blackbody radiation or phonons at one temperature."""

    name: str
    temperature_k: float

    def __post_init__(self):
        if self.temperature_k <= 0:
            raise DomainError(
                f"bath {self.name!r}: temperature_k must be > 0, got {self.temperature_k}"
            )


@dataclass(frozen=True)
class FluxResult:
    """Photon flux above a band gap for a blackbody at one temperature."""

    band_gap_ev: float
    temperature_k: float
    flux_per_m2_s: float


@dataclass(frozen=True)
class AreaResult:
    """Cell area whose absorbed photon flux equals a given pump rate."""

    area_m2: float
    pump_rate_per_s: float
    flux: FluxResult
    note: str


def bose_occupation(delta_e_ev: float, temperature_k: float) -> float:
    """Mean photon number of a thermal mode, 1/(exp(dE/kT) - 1).

    Stable over the whole physical range: the small-argument regime uses
    expm1 and arguments beyond 700 fall back to exp(-x), so the result is
    finite and nonnegative instead of overflowing to inf or NaN.
    """
    if delta_e_ev <= 0:
        raise DomainError(f"delta_e_ev must be > 0, got {delta_e_ev}")
    if temperature_k <= 0:
        raise DomainError(f"temperature_k must be > 0, got {temperature_k}")
    x = delta_e_ev / (K_B_EV_PER_K * temperature_k)
    if x > _EXP_CUTOFF:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def planck_photon_flux(band_gap_ev: float, temperature_k: float) -> FluxResult:
    """Blackbody photons above the gap, per unit area per unit time.

    Q(E_g, T) = (2 pi / c^2) (kT/h)^3 * Int_{x_g}^inf x^2/(e^x - 1) dx
    with x_g = E_g / kT.  The tail integral is summed with the exponential
    series sum_n e^{-n x_g} (x_g^2/n + 2 x_g/n^2 + 2/n^3), truncated once a
    term falls below 1e-16 of the running sum.  The series is exact, so no
    quadrature step-size appears in the hot path.
    """
    if band_gap_ev <= 0:
        raise DomainError(f"band_gap_ev must be > 0, got {band_gap_ev}")
    if temperature_k <= 0:
        raise DomainError(f"temperature_k must be > 0, got {temperature_k}")
    x_g = band_gap_ev / (K_B_EV_PER_K * temperature_k)
    total = 0.0
    n = 1
    while True:
        damp = math.exp(-n * x_g) if n * x_g < _EXP_CUTOFF else 0.0
        term = damp * (x_g * x_g / n + 2.0 * x_g / (n * n) + 2.0 / (n * n * n))
        total += term
        if term <= 1e-16 * total:
            break
        n += 1
    prefactor = (
        2.0 * math.pi / (C_M_PER_S * C_M_PER_S)
        * (K_B_EV_PER_K * temperature_k / H_EV_S) ** 3
    )
    return FluxResult(band_gap_ev, temperature_k, prefactor * total)


def pump_rate_to_area(
    pump_rate_per_s: float, band_gap_ev: float, temperature_k: float
) -> AreaResult:
    """Cell area collecting the given pump rate from the blackbody flux."""
    if pump_rate_per_s <= 0:
        raise DomainError(f"pump_rate_per_s must be > 0, got {pump_rate_per_s}")
    flux = planck_photon_flux(band_gap_ev, temperature_k)
    area = pump_rate_per_s / flux.flux_per_m2_s
    note = (
        f"area = pump_rate / flux = {area:.4e} m^2 ({area * 1e12:.4g} um^2). "
        f"For reference, a 0.1 um^2 cell at this flux absorbs "
        f"{flux.flux_per_m2_s * 1e-13:.3e} photons/s; the commonly quoted "
        f"correspondence of 1e15 s^-1 with 0.1 um^2 is inconsistent with "
        f"this flux and both numbers are recorded here rather than adjusted."
    )
    return AreaResult(area, pump_rate_per_s, flux, note)
