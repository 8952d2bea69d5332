"""Command-line surface: subcommands, exit codes, emitted files."""

import json
import subprocess
import sys

import pytest


def run_cli(*args, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "qpvsim", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


class TestFlux:
    def test_prints_flux_and_area(self):
        result = run_cli("flux", "--egap", "1.8", "--temp", "6000", "--pump-rate", "1e15")
        assert result.returncode == 0
        assert "flux_per_m2_s = 8.966694e+25" in result.stdout
        assert "area_m2 = 1.115238e-11" in result.stdout
        assert "0.1 um^2" in result.stdout

    def test_missing_argument_is_usage_error(self):
        result = run_cli("flux", "--egap", "1.8")
        assert result.returncode == 2

    def test_domain_error_exit_code(self):
        result = run_cli("flux", "--egap", "-1.0", "--temp", "6000")
        assert result.returncode == 1
        assert "error:" in result.stderr


class TestPresets:
    def test_lists_models(self):
        result = run_cli("presets")
        assert result.returncode == 0
        for name in ("model_a", "model_b", "model_c_coupled", "model_c_uncoupled"):
            assert name in result.stdout


class TestSimulate:
    def test_steady_state_output(self):
        result = run_cli(
            "simulate", "--model", "model_b", "--wp", "1e12", "--gamma", "1e12"
        )
        assert result.returncode == 0
        assert "P_alpha" in result.stdout
        assert "current_a" in result.stdout

    def test_trace_csv(self, tmp_path):
        out = tmp_path / "trace.csv"
        result = run_cli(
            "simulate",
            "--model",
            "model_b",
            "--wp",
            "1e13",
            "--gamma",
            "1e12",
            "--trace",
            str(out),
            "--steps",
            "20",
        )
        assert result.returncode == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "time_s,P_0,P_1,P_alpha,P_beta"
        assert len(lines) == 22  # header + initial + 20 steps
        assert (tmp_path / "trace.csv.manifest.json").exists()

    def test_unknown_model(self):
        result = run_cli("simulate", "--model", "model_z", "--gamma", "1e12")
        assert result.returncode == 1
        assert "neither a preset" in result.stderr

    def test_config_file_model(self, tmp_path):
        from qpvsim import preset_model_b, save_config

        path = tmp_path / "custom.json"
        save_config(preset_model_b(1e12, gamma_load_per_s=1e11), path)
        result = run_cli("simulate", "--model", str(path))
        assert result.returncode == 0
        assert "P_alpha" in result.stdout


class TestIvAndFit:
    def test_iv_pump_sweep_fit_pipeline(self, tmp_path):
        iv_path = tmp_path / "iv.csv"
        result = run_cli(
            "iv",
            "--model",
            "model_b",
            "--wp",
            "1e12",
            "--gamma-min",
            "1e7",
            "--gamma-max",
            "1e15",
            "--points",
            "24",
            "--out",
            str(iv_path),
        )
        assert result.returncode == 0, result.stderr
        assert iv_path.exists()
        manifest = json.loads((tmp_path / "iv.csv.manifest.json").read_text())
        assert manifest["sweep_parameters"]["pump_rate_per_s"] == 1e12

        sweep_path = tmp_path / "pump.csv"
        result = run_cli(
            "pump-sweep",
            "--model",
            "model_b",
            "--wp-min",
            "1e12",
            "--wp-max",
            "1e14",
            "--points",
            "4",
            "--out",
            str(sweep_path),
        )
        assert result.returncode == 0, result.stderr

        result = run_cli("fit", "--in", str(sweep_path))
        assert result.returncode == 0, result.stderr
        assert "a = " in result.stdout
        assert "b = " in result.stdout

    def test_model_a_takes_no_pump_rate(self, tmp_path):
        result = run_cli(
            "iv",
            "--model",
            "model_a",
            "--wp",
            "1e12",
            "--gamma-min",
            "1e7",
            "--gamma-max",
            "1e12",
            "--points",
            "12",
            "--out",
            str(tmp_path / "a.csv"),
        )
        assert result.returncode == 1
        assert "no pump channel" in result.stderr

    def test_model_a_iv_without_pump(self, tmp_path):
        result = run_cli(
            "iv",
            "--model",
            "model_a",
            "--gamma-min",
            "1e7",
            "--gamma-max",
            "1e12",
            "--points",
            "12",
            "--out",
            str(tmp_path / "a.csv"),
        )
        assert result.returncode == 0, result.stderr


class TestDeterminism:
    def test_byte_identical_across_runs_and_thread_counts(self, tmp_path):
        outputs = []
        for run_index, threads in enumerate(["1", "8", "1", "8"]):
            path = tmp_path / f"iv_{run_index}.csv"
            result = run_cli(
                "iv",
                "--model",
                "model_b",
                "--wp",
                "1e13",
                "--gamma-min",
                "1e8",
                "--gamma-max",
                "1e15",
                "--points",
                "20",
                "--out",
                str(path),
                env={"QPV_THREADS": threads},
            )
            assert result.returncode == 0, result.stderr
            outputs.append(path.read_bytes())
        assert len(set(outputs)) == 1
