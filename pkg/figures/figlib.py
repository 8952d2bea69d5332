"""Shared plumbing for the figure scripts.

Reads the simulator's CSV contract (I-V sweeps and pump sweeps, plus the
JSON manifest written alongside each file) and applies one deterministic
matplotlib style so regenerated images are byte-identical for identical
inputs.
"""

import json
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

IV_COLUMNS = [
    "gamma_per_s",
    "voltage_v",
    "current_a",
    "power_w",
    "power_uev_per_s",
    "P_alpha",
    "P_beta",
]
PUMP_COLUMNS = [
    "wp_per_s",
    "pmax_w",
    "pmax_uev_per_s",
    "v_mpp_v",
    "gamma_mpp_per_s",
    "efficiency",
]


class FigureInputError(Exception):
    """A CSV input does not match the simulator's emission contract."""


def apply_style():
    matplotlib.rcParams.update(
        {
            "figure.figsize": (9.0, 3.6),
            "figure.dpi": 110,
            "savefig.dpi": 150,
            "font.size": 9,
            "axes.grid": True,
            "grid.alpha": 0.3,
            "lines.linewidth": 1.4,
            "legend.fontsize": 8,
            "svg.hashsalt": "qpvsim-figures",
        }
    )


def _read_csv(path, expected_columns):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FigureInputError(f"cannot read {path}: {exc}") from None
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 2:
        raise FigureInputError(f"{path} has no data rows")
    header = lines[0].split(",")
    for column in expected_columns:
        if column not in header:
            raise FigureInputError(f"{path} is missing the column {column!r}")
    indices = {column: header.index(column) for column in expected_columns}
    data = {column: [] for column in expected_columns}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        for column in expected_columns:
            try:
                data[column].append(float(cells[indices[column]]))
            except (IndexError, ValueError):
                raise FigureInputError(
                    f"{path}:{lineno}: bad value in column {column!r}"
                ) from None
    return {column: np.asarray(values) for column, values in data.items()}


def read_iv_csv(path):
    return _read_csv(path, IV_COLUMNS)


def read_pump_csv(path):
    return _read_csv(path, PUMP_COLUMNS)


def pump_rate_label(path):
    """Legend label for an I-V sweep, from its manifest if available."""
    manifest_path = Path(str(path) + ".manifest.json")
    if manifest_path.exists():
        try:
            payload = json.loads(manifest_path.read_text())
            wp = payload["sweep_parameters"]["pump_rate_per_s"]
            return f"$W_p$ = {wp:.2g} s$^{{-1}}$"
        except (json.JSONDecodeError, KeyError):
            pass
    return Path(path).stem


def positive_voltage_branch(data):
    """Restrict an I-V sweep to the operating quadrant V >= 0."""
    keep = data["voltage_v"] >= 0.0
    return {column: values[keep] for column, values in data.items()}


def saturation_curve(wp, a, b):
    return a * wp / (wp + b)
