"""Config ingestion/serialization and CSV emission contracts."""

import json

import numpy as np
import pytest

from qpvsim import (
    ConfigError,
    EmissionError,
    OperatingPoint,
    PopulationState,
    build_rate_matrix,
    ingest_config,
    preset_model_b,
    preset_model_c,
    save_config,
    system_from_config,
    system_to_config,
)
from qpvsim.csv_io import (
    IV_HEADER,
    PUMP_HEADER,
    RunManifest,
    emit_iv_csv,
    emit_pump_csv,
    emit_trace_csv,
    read_pump_csv,
)
from qpvsim.sweeps import IVCurve, PumpSweep, PumpSweepPoint, iv_sweep


class TestConfigRoundTrip:
    @pytest.mark.parametrize("coupled", [True, False])
    def test_preset_round_trip_is_bit_exact(self, coupled):
        original = preset_model_c(3.7e13, coupled=coupled, gamma_load_per_s=2.5e11)
        recovered = system_from_config(system_to_config(original))
        m_original = build_rate_matrix(original).entries
        m_recovered = build_rate_matrix(recovered).entries
        assert np.array_equal(m_original, m_recovered)

    def test_file_round_trip(self, tmp_path):
        original = preset_model_b(1.1e12, gamma_load_per_s=9e10, chi=0.25)
        path = tmp_path / "model.json"
        save_config(original, path)
        recovered = ingest_config(path)
        assert np.array_equal(
            build_rate_matrix(original).entries, build_rate_matrix(recovered).entries
        )
        assert recovered.voltage_temperature_k == original.voltage_temperature_k


class TestConfigValidation:
    def base_config(self):
        return system_to_config(preset_model_b(1e12, gamma_load_per_s=1e11))

    def test_both_rate_fields_rejected(self):
        config = self.base_config()
        config["transitions"][0]["hbar_gamma_ev"] = 1.24e-6
        with pytest.raises(ConfigError, match="exactly one"):
            system_from_config(config)

    def test_missing_rate_field_rejected(self):
        config = self.base_config()
        del config["transitions"][0]["gamma_per_s"]
        with pytest.raises(ConfigError, match="exactly one"):
            system_from_config(config)

    def test_unknown_bath_names_the_transition(self):
        config = self.base_config()
        config["transitions"][1]["bath"] = "lukewarm"
        with pytest.raises(ConfigError, match="alpha.*unknown bath|unknown bath.*lukewarm"):
            system_from_config(config)

    def test_all_violations_reported_at_once(self):
        config = self.base_config()
        config["transitions"][0]["bath"] = "lukewarm"
        config["extraction"]["chi"] = -2.0
        config["pumps"][0]["rate_per_s"] = -1.0
        with pytest.raises(ConfigError) as excinfo:
            system_from_config(config)
        message = str(excinfo.value)
        assert "unknown bath" in message
        assert "chi" in message
        assert "rate_per_s" in message

    def test_parse_error_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "levels": [\n }')
        with pytest.raises(ConfigError, match="line 3"):
            ingest_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            ingest_config(tmp_path / "nope.json")

    def test_hbar_gamma_conversion_applied_once(self):
        config = self.base_config()
        gamma = config["transitions"][0]["gamma_per_s"]
        del config["transitions"][0]["gamma_per_s"]
        config["transitions"][0]["hbar_gamma_ev"] = 1.24e-6
        system = system_from_config(config)
        assert system.transitions[0].gamma_per_s == pytest.approx(gamma, rel=1e-12)


def small_curve():
    return iv_sweep(preset_model_b(1e12), None, 1e8, 1e14, 12)


class TestCsvEmission:
    def test_iv_header_and_round_trip_precision(self, tmp_path):
        curve = small_curve()
        path = tmp_path / "iv.csv"
        emit_iv_csv(curve, path)
        lines = path.read_text().splitlines()
        assert lines[0] == IV_HEADER
        first_gamma = float(lines[1].split(",")[0])
        by_gamma = sorted(curve.points, key=lambda p: p.gamma_load_per_s)
        assert first_gamma == by_gamma[0].gamma_load_per_s  # exact round trip
        parsed = [float(lines[1].split(",")[i]) for i in range(4)]
        assert parsed[3] == by_gamma[0].power_w

    def test_rows_sorted_by_first_column(self, tmp_path):
        path = tmp_path / "iv.csv"
        emit_iv_csv(small_curve(), path)
        gammas = [float(line.split(",")[0]) for line in path.read_text().splitlines()[1:]]
        assert gammas == sorted(gammas)

    def test_empty_curve_rejected(self, tmp_path):
        curve = IVCurve(1e12, (), "alpha", "beta")
        with pytest.raises(EmissionError):
            emit_iv_csv(curve, tmp_path / "iv.csv")

    def test_power_identity_enforced_at_emission(self, tmp_path):
        state = PopulationState(("alpha", "beta"), np.array([0.5, 0.5]))
        bad = OperatingPoint(1e10, 1e-9, 1.0, 5e-9, state)
        curve = IVCurve(1e12, (bad,), "alpha", "beta")
        with pytest.raises(EmissionError, match="P = I\\*V"):
            emit_iv_csv(curve, tmp_path / "iv.csv")

    def test_pump_header_and_read_back(self, tmp_path):
        points = tuple(
            PumpSweepPoint(wp, wp * 1e-20, 1.3, 1e13, 0.5 / (i + 1))
            for i, wp in enumerate([1e11, 1e12, 1e13])
        )
        path = tmp_path / "pump.csv"
        emit_pump_csv(PumpSweep(points), path)
        lines = path.read_text().splitlines()
        assert lines[0] == PUMP_HEADER
        wp, power = read_pump_csv(path)
        assert wp == [1e11, 1e12, 1e13]
        assert power == [p.max_power_w for p in points]  # exact round trip

    def test_read_pump_csv_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("x,y\n1,2\n")
        with pytest.raises(EmissionError, match="wp_per_s"):
            read_pump_csv(path)

    def test_trace_header(self, tmp_path):
        states = [
            PopulationState(("0", "1"), np.array([1.0, 0.0]), 0.0),
            PopulationState(("0", "1"), np.array([0.9, 0.1]), 1e-15),
        ]
        path = tmp_path / "trace.csv"
        emit_trace_csv(states, path)
        assert path.read_text().splitlines()[0] == "time_s,P_0,P_1"


class TestManifest:
    def test_written_alongside_with_assumptions(self, tmp_path):
        system = preset_model_b(1e12, gamma_load_per_s=1e11)
        manifest = RunManifest(
            command_line=["qpvsim", "iv"],
            model_source="model_b",
            resolved_config=system_to_config(system),
            sweep_parameters={"n_points": 12},
            assumptions=list(system.assumptions),
            artifact_version="0.1.0",
        )
        csv_path = tmp_path / "iv.csv"
        emit_iv_csv(small_curve(), csv_path)
        manifest_path = manifest.write_alongside(csv_path)
        assert manifest_path.name == "iv.csv.manifest.json"
        payload = json.loads(manifest_path.read_text())
        assert payload["model_source"] == "model_b"
        assert payload["resolved_config"]["extraction"]["source"] == "alpha"
        assert any("pump convention" in a for a in payload["assumptions"])
