"""Built-in photocell models.

Three four/five-level models plus an uncoupled-donor comparison:

* ``model_a``   -- donor in contact with both reservoirs (hot 6000 K drives
  the optical transition thermally).
* ``model_b``   -- donor in contact with the cold reservoir only; the hot
  reservoir is replaced by a pump channel on the optical transition.
* ``model_c_coupled``   -- two coupled donors forming a bright state (the
  only optically active level) and a lower dark state that is filled by
  phonon relaxation and protected from re-emission.
* ``model_c_uncoupled`` -- the same donors without coupling: both excited
  levels optically active, each pumped at half the total rate.

All presets are generated as config dictionaries and ingested through the
generic config path, so every choice a preset makes can be reproduced or
overridden by a user-written config file.
"""

from __future__ import annotations

from .config import system_from_config
from .errors import DomainError
from .rate_network import LevelSystem

# Donor optical gap and the donor->acceptor / acceptor->ground ladder step.
BAND_GAP_EV = 1.8
LADDER_STEP_EV = 0.2

T_HOT_K = 6000.0
T_COLD_K = 300.0

# Linewidths (hbar * gamma) shared by models A and B.
HBAR_GAMMA_OPTICAL_EV = 1.24e-6
HBAR_GAMMA_TRANSFER_EV = 0.012
HBAR_GAMMA_RELAX_EV = 0.024

# Model C defaults.  The source material for the coupled-donor rates is
# external and incomplete, so these are package choices, flagged in the
# generated config's assumptions:
#  - bright/dark splitting 0.02 eV;
#  - donor->acceptor transfer slowed to hbar*gamma = 0.6 meV, well below
#    the 12 meV intra-donor phonon relaxation.  If the transfer drain is
#    as fast as phonon relaxation, the dark state never accumulates the
#    thermal excess population that produces the coherent power boost.
SPLITTING_EV = 0.02
HBAR_GAMMA_PHONON_EV = 0.012
HBAR_GAMMA_C_TRANSFER_EV = 0.0006

_PUMP_CONVENTION_NOTE = (
    "pump convention: symmetric rate W on both directions, net upward "
    "transfer W*(P_lower - P_upper)"
)


def _four_level_config(
    optical_bath: str,
    baths: list[dict],
    pump_rate_per_s: float | None,
    gamma_load_per_s: float,
    chi: float,
    voltage_temperature_k: float | None,
    assumptions: list[str],
) -> dict:
    e_upper = BAND_GAP_EV
    config = {
        "levels": [
            {"name": "0", "energy_ev": 0.0},
            {"name": "1", "energy_ev": e_upper},
            {"name": "alpha", "energy_ev": e_upper - LADDER_STEP_EV},
            {"name": "beta", "energy_ev": LADDER_STEP_EV},
        ],
        "baths": baths,
        "transitions": [
            {
                "lower": "0",
                "upper": "1",
                "hbar_gamma_ev": HBAR_GAMMA_OPTICAL_EV,
                "bath": optical_bath,
            },
            {
                "lower": "alpha",
                "upper": "1",
                "hbar_gamma_ev": HBAR_GAMMA_TRANSFER_EV,
                "bath": "cold",
            },
            {
                "lower": "0",
                "upper": "beta",
                "hbar_gamma_ev": HBAR_GAMMA_RELAX_EV,
                "bath": "cold",
            },
        ],
        "pumps": [],
        "extraction": {
            "source": "alpha",
            "sink": "beta",
            "gamma_load_per_s": gamma_load_per_s,
            "chi": chi,
            "recomb_target": "0",
        },
        "voltage_temperature_k": voltage_temperature_k or T_COLD_K,
        "assumptions": list(assumptions),
    }
    if pump_rate_per_s is not None:
        config["pumps"].append(
            {"lower": "0", "upper": "1", "rate_per_s": pump_rate_per_s}
        )
    return config


def preset_config_model_a(
    gamma_load_per_s: float = 0.0,
    chi: float = 0.0,
    voltage_temperature_k: float | None = None,
) -> dict:
    return _four_level_config(
        optical_bath="hot",
        baths=[
            {"name": "hot", "temperature_k": T_HOT_K},
            {"name": "cold", "temperature_k": T_COLD_K},
        ],
        pump_rate_per_s=None,
        gamma_load_per_s=gamma_load_per_s,
        chi=chi,
        voltage_temperature_k=voltage_temperature_k,
        assumptions=["dual-bath model: optical transition thermally driven at 6000 K"],
    )


def preset_config_model_b(
    pump_rate_per_s: float,
    gamma_load_per_s: float = 0.0,
    chi: float = 0.0,
    voltage_temperature_k: float | None = None,
) -> dict:
    if pump_rate_per_s < 0:
        raise DomainError(f"pump_rate_per_s must be >= 0, got {pump_rate_per_s}")
    return _four_level_config(
        optical_bath="cold",
        baths=[{"name": "cold", "temperature_k": T_COLD_K}],
        pump_rate_per_s=pump_rate_per_s,
        gamma_load_per_s=gamma_load_per_s,
        chi=chi,
        voltage_temperature_k=voltage_temperature_k,
        assumptions=[_PUMP_CONVENTION_NOTE],
    )


def preset_config_model_c(
    pump_rate_per_s: float,
    coupled: bool = True,
    gamma_load_per_s: float = 0.0,
    chi: float = 0.0,
    splitting_ev: float = SPLITTING_EV,
    hbar_gamma_transfer_ev: float = HBAR_GAMMA_C_TRANSFER_EV,
    hbar_gamma_dark_transfer_ev: float | None = None,
    hbar_gamma_phonon_ev: float = HBAR_GAMMA_PHONON_EV,
    voltage_temperature_k: float | None = None,
) -> dict:
    """Five-level coupled (or uncoupled) donor pair feeding one acceptor.

    ``hbar_gamma_dark_transfer_ev`` controls the dark-state -> acceptor
    channel of the coupled model; it defaults to the bright-state value
    and 0.0 removes the channel entirely.
    """
    if pump_rate_per_s < 0:
        raise DomainError(f"pump_rate_per_s must be >= 0, got {pump_rate_per_s}")
    if not 0 < splitting_ev < BAND_GAP_EV - LADDER_STEP_EV:
        raise DomainError(f"splitting_ev out of range: {splitting_ev}")
    if hbar_gamma_dark_transfer_ev is None:
        hbar_gamma_dark_transfer_ev = hbar_gamma_transfer_ev

    e_bright = BAND_GAP_EV
    e_dark = BAND_GAP_EV - splitting_ev
    assumptions = [
        _PUMP_CONVENTION_NOTE,
        f"bright/dark splitting {splitting_ev} eV: assumed, donor coupling unspecified",
        "donor rates assumed: hbar*gamma optical 1.24e-6 eV, phonon "
        f"{hbar_gamma_phonon_ev} eV, transfer {hbar_gamma_transfer_ev} eV "
        f"(dark channel {hbar_gamma_dark_transfer_ev} eV), relax 0.024 eV",
    ]
    levels = [
        {"name": "0", "energy_ev": 0.0},
        {"name": "1", "energy_ev": e_dark},
        {"name": "2", "energy_ev": e_bright},
        {"name": "alpha", "energy_ev": e_bright - LADDER_STEP_EV},
        {"name": "beta", "energy_ev": LADDER_STEP_EV},
    ]
    transitions = []
    pumps = []
    if coupled:
        assumptions.append(
            "coupled topology: only the bright state |2> is optically active; "
            "|1> is dark (no pump, no radiative channel)"
        )
        transitions.append(
            {"lower": "0", "upper": "2", "hbar_gamma_ev": HBAR_GAMMA_OPTICAL_EV, "bath": "cold"}
        )
        transitions.append(
            {"lower": "1", "upper": "2", "hbar_gamma_ev": hbar_gamma_phonon_ev, "bath": "cold"}
        )
        transitions.append(
            {"lower": "alpha", "upper": "2", "hbar_gamma_ev": hbar_gamma_transfer_ev, "bath": "cold"}
        )
        if hbar_gamma_dark_transfer_ev > 0:
            transitions.append(
                {
                    "lower": "alpha",
                    "upper": "1",
                    "hbar_gamma_ev": hbar_gamma_dark_transfer_ev,
                    "bath": "cold",
                }
            )
        pumps.append({"lower": "0", "upper": "2", "rate_per_s": pump_rate_per_s})
    else:
        assumptions.append(
            "uncoupled comparison: both excited levels optically active, "
            "pumped at half the total rate each, no interconversion"
        )
        for excited in ("1", "2"):
            transitions.append(
                {"lower": "0", "upper": excited, "hbar_gamma_ev": HBAR_GAMMA_OPTICAL_EV, "bath": "cold"}
            )
            transitions.append(
                {
                    "lower": "alpha",
                    "upper": excited,
                    "hbar_gamma_ev": hbar_gamma_transfer_ev,
                    "bath": "cold",
                }
            )
            pumps.append(
                {"lower": "0", "upper": excited, "rate_per_s": pump_rate_per_s / 2.0}
            )
    transitions.append(
        {"lower": "0", "upper": "beta", "hbar_gamma_ev": HBAR_GAMMA_RELAX_EV, "bath": "cold"}
    )
    return {
        "levels": levels,
        "baths": [{"name": "cold", "temperature_k": T_COLD_K}],
        "transitions": transitions,
        "pumps": pumps,
        "extraction": {
            "source": "alpha",
            "sink": "beta",
            "gamma_load_per_s": gamma_load_per_s,
            "chi": chi,
            "recomb_target": "0",
        },
        "voltage_temperature_k": voltage_temperature_k or T_COLD_K,
        "assumptions": assumptions,
    }


def preset_model_a(**kwargs) -> LevelSystem:
    return system_from_config(preset_config_model_a(**kwargs))


def preset_model_b(pump_rate_per_s: float, **kwargs) -> LevelSystem:
    return system_from_config(preset_config_model_b(pump_rate_per_s, **kwargs))


def preset_model_c(pump_rate_per_s: float, coupled: bool = True, **kwargs) -> LevelSystem:
    return system_from_config(
        preset_config_model_c(pump_rate_per_s, coupled=coupled, **kwargs)
    )


PRESETS = {
    "model_a": {
        "description": "4-level dual-bath photocell (no pump; hot bath at 6000 K)",
        "takes_pump_rate": False,
        "build": lambda wp=None, **kw: preset_model_a(**kw),
    },
    "model_b": {
        "description": "4-level pumped photocell in the cold bath only",
        "takes_pump_rate": True,
        "build": lambda wp, **kw: preset_model_b(wp, **kw),
    },
    "model_c_coupled": {
        "description": "5-level coupled donors: bright state pumped, dark state protected",
        "takes_pump_rate": True,
        "build": lambda wp, **kw: preset_model_c(wp, coupled=True, **kw),
    },
    "model_c_uncoupled": {
        "description": "5-level uncoupled donors: both excited levels pumped at W/2",
        "takes_pump_rate": True,
        "build": lambda wp, **kw: preset_model_c(wp, coupled=False, **kw),
    },
}


def build_preset(name: str, pump_rate_per_s: float | None = None, **kwargs) -> LevelSystem:
    if name not in PRESETS:
        raise DomainError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        )
    entry = PRESETS[name]
    if entry["takes_pump_rate"]:
        if pump_rate_per_s is None:
            raise DomainError(f"preset {name!r} requires a pump rate")
        return entry["build"](pump_rate_per_s, **kwargs)
    if pump_rate_per_s not in (None, 0, 0.0):
        raise DomainError(f"preset {name!r} has no pump channel; do not pass a pump rate")
    return entry["build"](**kwargs)
