"""Model config ingestion and serialization.

The config format is the source of truth for model definitions; presets
are generators of configs.  Every rate may be given either as a bare rate
``gamma_per_s`` or as an energy-width ``hbar_gamma_ev``; the conversion
gamma = hbar_gamma / hbar happens here, exactly once, so no downstream
code ever converts units again.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ConfigError
from .radiometry import HBAR_EV_S, Bath
from .rate_network import (
    EnergyLevel,
    Extraction,
    LevelSystem,
    Pump,
    ThermalTransition,
    validate_system,
)


def system_from_config(data: dict) -> LevelSystem:
    """Build a validated LevelSystem from a config dictionary.

    Violations are collected and reported together rather than one at a
    time, so a broken config can be fixed in a single pass.
    """
    problems: list[str] = []

    def section(key, expected, required=True):
        value = data.get(key)
        if value is None:
            if required:
                problems.append(f"missing required section {key!r}")
            return []
        if not isinstance(value, list):
            problems.append(f"section {key!r} must be a list")
            return []
        bad = [i for i, item in enumerate(value) if not isinstance(item, dict)]
        if bad:
            problems.append(f"section {key!r}: entries {bad} are not objects")
            return []
        return value

    def number(obj, key, where, required=True, default=None):
        if key not in obj:
            if required:
                problems.append(f"{where}: missing field {key!r}")
            return default
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"{where}: field {key!r} must be a number")
            return default
        return float(value)

    def text(obj, key, where):
        value = obj.get(key)
        if not isinstance(value, str) or not value:
            problems.append(f"{where}: missing or non-string field {key!r}")
            return ""
        return value

    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")

    levels = []
    for i, item in enumerate(section("levels", list)):
        where = f"levels[{i}]"
        levels.append(
            EnergyLevel(text(item, "name", where), number(item, "energy_ev", where) or 0.0)
        )

    baths = []
    for i, item in enumerate(section("baths", list)):
        where = f"baths[{i}]"
        name = text(item, "name", where)
        temp = number(item, "temperature_k", where)
        if temp is not None and temp > 0:
            baths.append(Bath(name, temp))
        elif temp is not None:
            problems.append(f"{where}: temperature_k must be > 0, got {temp}")

    transitions = []
    for i, item in enumerate(section("transitions", list)):
        where = f"transitions[{i}]"
        lower = text(item, "lower", where)
        upper = text(item, "upper", where)
        bath = text(item, "bath", where)
        has_hbar = "hbar_gamma_ev" in item
        has_rate = "gamma_per_s" in item
        if has_hbar and has_rate:
            problems.append(
                f"{where} ({lower!r}<->{upper!r}): give exactly one of "
                "hbar_gamma_ev or gamma_per_s, not both"
            )
            continue
        if not has_hbar and not has_rate:
            problems.append(
                f"{where} ({lower!r}<->{upper!r}): give exactly one of "
                "hbar_gamma_ev or gamma_per_s"
            )
            continue
        if has_hbar:
            width = number(item, "hbar_gamma_ev", where)
            gamma = width / HBAR_EV_S if width is not None else 0.0
        else:
            gamma = number(item, "gamma_per_s", where) or 0.0
        transitions.append(ThermalTransition(lower, upper, gamma, bath))

    pumps = []
    for i, item in enumerate(section("pumps", list, required=False)):
        where = f"pumps[{i}]"
        pumps.append(
            Pump(
                text(item, "lower", where),
                text(item, "upper", where),
                number(item, "rate_per_s", where) or 0.0,
            )
        )

    ext_data = data.get("extraction")
    extraction = None
    if not isinstance(ext_data, dict):
        problems.append("missing required section 'extraction'")
    else:
        where = "extraction"
        extraction = Extraction(
            text(ext_data, "source", where),
            text(ext_data, "sink", where),
            number(ext_data, "gamma_load_per_s", where) or 0.0,
            number(ext_data, "chi", where, required=False, default=0.0),
            text(ext_data, "recomb_target", where),
        )

    voltage_t = data.get("voltage_temperature_k", 0.0)
    if not isinstance(voltage_t, (int, float)) or isinstance(voltage_t, bool):
        problems.append("voltage_temperature_k must be a number")
        voltage_t = 0.0

    assumptions = data.get("assumptions", [])
    if not (isinstance(assumptions, list) and all(isinstance(a, str) for a in assumptions)):
        problems.append("assumptions must be a list of strings")
        assumptions = []

    if problems:
        raise ConfigError("config invalid: " + "; ".join(problems))

    trial = dict(
        levels=tuple(levels),
        baths=tuple(baths),
        transitions=tuple(transitions),
        pumps=tuple(pumps),
        extraction=extraction,
        voltage_temperature_k=float(voltage_t),
        assumptions=tuple(assumptions),
    )
    shadow = _Unvalidated(**trial)
    violations = validate_system(shadow)
    if violations:
        raise ConfigError("config invalid: " + "; ".join(violations))
    return LevelSystem(**trial)


class _Unvalidated:
    """Duck-typed LevelSystem stand-in for pre-construction validation."""

    def __init__(self, **fields):
        self.__dict__.update(fields)


def system_to_config(system: LevelSystem) -> dict:
    """Serialize a LevelSystem to the config format.

    Rates are emitted as gamma_per_s (already converted), so a round trip
    through ingestion reproduces the identical rate matrix bit for bit.
    """
    return {
        "levels": [
            {"name": lv.name, "energy_ev": lv.energy_ev} for lv in system.levels
        ],
        "baths": [
            {"name": b.name, "temperature_k": b.temperature_k} for b in system.baths
        ],
        "transitions": [
            {
                "lower": t.lower,
                "upper": t.upper,
                "gamma_per_s": t.gamma_per_s,
                "bath": t.bath,
            }
            for t in system.transitions
        ],
        "pumps": [
            {"lower": p.lower, "upper": p.upper, "rate_per_s": p.rate_per_s}
            for p in system.pumps
        ],
        "extraction": {
            "source": system.extraction.source,
            "sink": system.extraction.sink,
            "gamma_load_per_s": system.extraction.gamma_load_per_s,
            "chi": system.extraction.chi,
            "recomb_target": system.extraction.recomb_target,
        },
        "voltage_temperature_k": system.voltage_temperature_k,
        "assumptions": list(system.assumptions),
    }


def ingest_config(path: str | Path) -> LevelSystem:
    """Load and validate a JSON model config from disk."""
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"parse error in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return system_from_config(data)


def save_config(system: LevelSystem, path: str | Path) -> None:
    Path(path).write_text(json.dumps(system_to_config(system), indent=2) + "\n")
