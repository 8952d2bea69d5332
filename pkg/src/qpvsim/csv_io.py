"""CSV emission and run manifests.

CSV is the interchange format between the simulation engines and the
figure scripts.  Numbers are written as 17-digit scientific notation so
re-reading reproduces the binary values exactly, and rows are sorted by
the first column, making output byte-identical across runs and worker
counts.  A JSON manifest (written alongside each CSV) records the command
line, the fully resolved model and every assumption flag, so any output
file can be traced back to, and regenerated from, its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .dynamics import PopulationState
from .errors import EmissionError
from .radiometry import E_CHARGE_C
from .sweeps import IVCurve, PumpSweep

IV_HEADER = "gamma_per_s,voltage_v,current_a,power_w,power_uev_per_s,P_alpha,P_beta"
PUMP_HEADER = "wp_per_s,pmax_w,pmax_uev_per_s,v_mpp_v,gamma_mpp_per_s,efficiency"

_POWER_IDENTITY_RTOL = 1e-12


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def _watts_to_uev_per_s(power_w: float) -> float:
    return power_w / E_CHARGE_C * 1e6


def emit_iv_csv(curve: IVCurve, path: str | Path) -> None:
    """Write an I-V sweep; every row is checked against P = I*V."""
    if not curve.points:
        raise EmissionError("refusing to emit an empty I-V curve")
    rows = sorted(curve.points, key=lambda p: p.gamma_load_per_s)
    lines = [IV_HEADER]
    for p in rows:
        if abs(p.power_w - p.current_a * p.voltage_v) > _POWER_IDENTITY_RTOL * max(
            abs(p.power_w), 1e-300
        ):
            raise EmissionError(
                f"operating point at gamma={p.gamma_load_per_s!r} violates P = I*V"
            )
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    p.gamma_load_per_s,
                    p.voltage_v,
                    p.current_a,
                    p.power_w,
                    _watts_to_uev_per_s(p.power_w),
                    p.populations.population(curve.source_level),
                    p.populations.population(curve.sink_level),
                )
            )
        )
    _write_lines(path, lines)


def emit_pump_csv(sweep: PumpSweep, path: str | Path) -> None:
    if not sweep.points:
        raise EmissionError("refusing to emit an empty pump sweep")
    rows = sorted(sweep.points, key=lambda p: p.pump_rate_per_s)
    lines = [PUMP_HEADER]
    for p in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    p.pump_rate_per_s,
                    p.max_power_w,
                    _watts_to_uev_per_s(p.max_power_w),
                    p.v_mpp_v,
                    p.gamma_mpp_per_s,
                    p.efficiency,
                )
            )
        )
    _write_lines(path, lines)


def emit_trace_csv(states: list[PopulationState], path: str | Path) -> None:
    if not states:
        raise EmissionError("refusing to emit an empty trace")
    names = states[0].level_names
    lines = ["time_s," + ",".join(f"P_{name}" for name in names)]
    for state in states:
        lines.append(
            ",".join([_fmt(state.time_s)] + [_fmt(p) for p in state.populations])
        )
    _write_lines(path, lines)


def _write_lines(path: str | Path, lines: list[str]) -> None:
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise EmissionError(f"cannot write {path}: {exc}") from None


def read_pump_csv(path: str | Path) -> tuple[list[float], list[float]]:
    """Read back (wp, pmax_w) columns from a pump-sweep CSV."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EmissionError(f"cannot read {path}: {exc}") from None
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise EmissionError(f"{path} is empty")
    header = lines[0].split(",")
    try:
        wp_col = header.index("wp_per_s")
        p_col = header.index("pmax_w")
    except ValueError:
        raise EmissionError(
            f"{path} lacks the pump-sweep columns wp_per_s/pmax_w (header: {lines[0]})"
        ) from None
    wp, power = [], []
    for i, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        try:
            wp.append(float(cells[wp_col]))
            power.append(float(cells[p_col]))
        except (IndexError, ValueError):
            raise EmissionError(f"{path}:{i}: malformed row {line!r}") from None
    return wp, power


@dataclass
class RunManifest:
    """Everything needed to audit and reproduce one emitted file."""

    command_line: list[str]
    model_source: str
    resolved_config: dict
    sweep_parameters: dict
    assumptions: list[str]
    artifact_version: str
    timestamp_utc: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def write_alongside(self, csv_path: str | Path) -> Path:
        manifest_path = Path(str(csv_path) + ".manifest.json")
        payload = {
            "artifact_version": self.artifact_version,
            "timestamp_utc": self.timestamp_utc,
            "command_line": self.command_line,
            "model_source": self.model_source,
            "resolved_config": self.resolved_config,
            "sweep_parameters": self.sweep_parameters,
            "assumptions": self.assumptions,
        }
        try:
            manifest_path.write_text(json.dumps(payload, indent=2) + "\n")
        except OSError as exc:
            raise EmissionError(f"cannot write {manifest_path}: {exc}") from None
        return manifest_path
