"""Session fixtures: generate figure inputs through the simulator CLI."""

import subprocess
import sys
from pathlib import Path

import pytest

FIGURES_DIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(FIGURES_DIR))


def run_qpvsim(*args):
    result = subprocess.run(
        [sys.executable, "-m", "qpvsim", *args], capture_output=True, text=True
    )
    assert result.returncode == 0, result.stderr
    return result


def run_script(name, *args):
    return subprocess.run(
        [sys.executable, str(FIGURES_DIR / name), *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="session")
def csv_inputs(tmp_path_factory):
    """I-V and pump-sweep CSVs for every figure, produced by the CLI."""
    root = tmp_path_factory.mktemp("csv_inputs")
    paths = {}

    for tag, wp in (("1e12", "1e12"), ("1e13", "1e13"), ("1e15", "1e15")):
        path = root / f"iv_b_{tag}.csv"
        run_qpvsim(
            "iv", "--model", "model_b", "--wp", wp,
            "--gamma-min", "1e7", "--gamma-max", "1e16",
            "--points", "40", "--out", str(path),
        )
        paths[f"iv_b_{tag}"] = path

    for model, key in (("model_c_coupled", "c"), ("model_c_uncoupled", "u")):
        for tag, wp in (("1e12", "1e12"), ("1e15", "1e15")):
            path = root / f"iv_{key}_{tag}.csv"
            run_qpvsim(
                "iv", "--model", model, "--wp", wp,
                "--gamma-min", "1e7", "--gamma-max", "1e16",
                "--points", "30", "--out", str(path),
            )
            paths[f"iv_{key}_{tag}"] = path

    pump_b = root / "pump_b.csv"
    run_qpvsim(
        "pump-sweep", "--model", "model_b",
        "--wp-min", "1e11", "--wp-max", "1e16",
        "--points", "7", "--out", str(pump_b),
    )
    paths["pump_b"] = pump_b

    for model, key in (("model_c_coupled", "c"), ("model_c_uncoupled", "u")):
        path = root / f"pump_{key}.csv"
        run_qpvsim(
            "pump-sweep", "--model", model,
            "--wp-min", "1e11", "--wp-max", "1e16",
            "--points", "6", "--out", str(path),
        )
        paths[f"pump_{key}"] = path

    return paths
