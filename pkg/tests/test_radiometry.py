"""Radiometry: Bose occupation, Planck photon flux, pump-rate calibration.

The flux series is checked against an independent adaptive-quadrature
oracle of the raw frequency integral (scipy QUADPACK with tight relative
tolerance), written before the series implementation and kept separate
from it.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from qpvsim import (
    CONSTANTS,
    DomainError,
    bose_occupation,
    planck_photon_flux,
    pump_rate_to_area,
)
from qpvsim.radiometry import C_M_PER_S, H_EV_S, K_B_EV_PER_K


def flux_quadrature_oracle(band_gap_ev: float, temperature_k: float) -> float:
    """(2 pi/c^2) Int nu^2/(e^{h nu/kT}-1) dnu over ~50 decay lengths."""
    nu_gap = band_gap_ev / H_EV_S
    nu_span = 50.0 * K_B_EV_PER_K * temperature_k / H_EV_S

    def integrand(nu):
        return nu * nu / math.expm1(H_EV_S * nu / (K_B_EV_PER_K * temperature_k))

    value, _ = quad(integrand, nu_gap, nu_gap + nu_span, epsabs=0.0, epsrel=1e-13, limit=800)
    return 2.0 * math.pi / C_M_PER_S**2 * value


class TestConstants:
    def test_h_is_two_pi_hbar(self):
        assert abs(CONSTANTS.h_ev_s - 2.0 * math.pi * CONSTANTS.hbar_ev_s) <= (
            1e-12 * CONSTANTS.h_ev_s
        )

    def test_all_positive(self):
        assert CONSTANTS.k_b_ev_per_k > 0
        assert CONSTANTS.hbar_ev_s > 0
        assert CONSTANTS.h_ev_s > 0
        assert CONSTANTS.c_m_per_s > 0
        assert CONSTANTS.e_charge_c > 0


class TestBoseOccupation:
    def test_hot_reservoir_at_donor_gap(self):
        # 1.8 eV mode of a 6000 K blackbody
        assert bose_occupation(1.8, 6000.0) == pytest.approx(0.0317, abs=1e-4)

    def test_cold_reservoir_at_ladder_step(self):
        assert bose_occupation(0.2, 300.0) == pytest.approx(4.368e-4, abs=1e-7)

    def test_deep_suppression_is_underflow_safe(self):
        value = bose_occupation(100.0, 300.0)
        assert value == pytest.approx(0.0, abs=1e-300)
        assert not math.isnan(value)

    def test_rayleigh_jeans_limit(self):
        kt = K_B_EV_PER_K * 300.0
        delta_e = 1e-6 * kt
        assert bose_occupation(delta_e, 300.0) == pytest.approx(kt / delta_e, rel=1e-4)

    def test_domain_errors_name_the_argument(self):
        with pytest.raises(DomainError, match="delta_e"):
            bose_occupation(-1.0, 300.0)
        with pytest.raises(DomainError, match="temperature"):
            bose_occupation(1.0, 0.0)

    def test_monotonic_in_energy_and_temperature(self, rng):
        energies = np.sort(rng.uniform(0.05, 5.0, size=30))
        temps = np.sort(rng.uniform(100.0, 9000.0, size=30))
        fixed_t = 1234.5
        values = [bose_occupation(float(e), fixed_t) for e in energies]
        assert all(a > b for a, b in zip(values, values[1:]))
        fixed_e = 0.71
        values = [bose_occupation(fixed_e, float(t)) for t in temps]
        assert all(a < b for a, b in zip(values, values[1:]))


class TestPlanckPhotonFlux:
    def test_solar_flux_above_donor_gap(self):
        flux = planck_photon_flux(1.8, 6000.0)
        assert flux.flux_per_m2_s == pytest.approx(9.0e25, rel=0.02)

    def test_agrees_with_quadrature_oracle_at_reference_point(self):
        flux = planck_photon_flux(1.8, 6000.0)
        assert flux.flux_per_m2_s == pytest.approx(
            flux_quadrature_oracle(1.8, 6000.0), rel=1e-10
        )

    def test_agrees_with_quadrature_oracle_on_grid(self):
        for band_gap in [0.1, 0.5, 1.0, 2.5, 5.0]:
            for temperature in [300.0, 1000.0, 6000.0, 10000.0]:
                oracle = flux_quadrature_oracle(band_gap, temperature)
                series = planck_photon_flux(band_gap, temperature).flux_per_m2_s
                assert series == pytest.approx(oracle, rel=1e-10), (
                    band_gap,
                    temperature,
                )

    def test_empty_tail_underflows_cleanly(self):
        flux = planck_photon_flux(1e4, 6000.0)
        assert flux.flux_per_m2_s < 1e-200
        assert not math.isnan(flux.flux_per_m2_s)

    def test_monotonic_in_gap_and_temperature(self, rng):
        gaps = np.sort(rng.uniform(0.1, 4.0, size=15))
        temps = np.sort(rng.uniform(300.0, 9000.0, size=15))
        at_fixed_t = [planck_photon_flux(float(g), 5000.0).flux_per_m2_s for g in gaps]
        assert all(a > b for a, b in zip(at_fixed_t, at_fixed_t[1:]))
        at_fixed_g = [planck_photon_flux(1.1, float(t)).flux_per_m2_s for t in temps]
        assert all(a < b for a, b in zip(at_fixed_g, at_fixed_g[1:]))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            planck_photon_flux(0.0, 6000.0)
        with pytest.raises(DomainError):
            planck_photon_flux(1.8, -5.0)


class TestPumpRateToArea:
    def test_inverse_of_flux_by_construction(self):
        flux = planck_photon_flux(1.8, 6000.0).flux_per_m2_s
        result = pump_rate_to_area(flux * 1e-13, 1.8, 6000.0)
        assert result.area_m2 == pytest.approx(1e-13, rel=1e-12)

    def test_reference_pump_rate_area(self):
        # 1e15 / Q_s computed with the quadrature oracle: 1.1152e-11 m^2,
        # about 100x the often-quoted 0.1 um^2.
        result = pump_rate_to_area(1e15, 1.8, 6000.0)
        oracle_area = 1e15 / flux_quadrature_oracle(1.8, 6000.0)
        assert result.area_m2 == pytest.approx(oracle_area, rel=1e-10)
        assert result.area_m2 == pytest.approx(1.1152e-11, rel=1e-3)

    def test_note_records_both_numbers(self):
        result = pump_rate_to_area(1e15, 1.8, 6000.0)
        assert "0.1 um^2" in result.note
        assert "1e15" in result.note

    def test_zero_rate_rejected(self):
        with pytest.raises(DomainError):
            pump_rate_to_area(0.0, 1.8, 6000.0)
