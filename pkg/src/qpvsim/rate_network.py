"""Declarative N-level photocell networks and their rate-matrix compilation.

A :class:`LevelSystem` lists energy levels, thermal baths, bath-mediated
transitions, pump channels and one extraction channel.  It compiles to the
generator M of the population master equation dP/dt = M . P, whose columns
sum to zero (probability conservation).

Rate conventions per channel, with n the Bose occupation of the connecting
bath at the transition energy:

* thermal transition lower<->upper:  upward rate gamma*n, downward rate
  gamma*(n+1);
* pump lower<->upper at rate W: symmetric rate W both ways, so the net
  transfer W*(P_lower - P_upper) pumps upward while the populations differ;
* extraction source->sink at rate G plus a recombination branch
  source->recomb_target at chi*G.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ModelError
from .radiometry import Bath, bose_occupation


@dataclass(frozen=True)
class EnergyLevel:
    name: str
    energy_ev: float


@dataclass(frozen=True)
class ThermalTransition:
    """Bath-mediated transition between two levels (lower -> upper ordering)."""

    lower: str
    upper: str
    gamma_per_s: float
    bath: str


@dataclass(frozen=True)
class Pump:
    """Phenomenological drive standing in for hot-reservoir photon flux."""

    lower: str
    upper: str
    rate_per_s: float


@dataclass(frozen=True)
class Extraction:
    """Load channel source -> sink plus the chi-weighted recombination loss."""

    source: str
    sink: str
    gamma_load_per_s: float
    chi: float
    recomb_target: str


@dataclass(frozen=True)
class LevelSystem:
    """Immutable description of one photocell model.

    ``voltage_temperature_k`` is the temperature entering the voltage
    logarithm; it defaults to the coldest bath.  ``assumptions`` carries
    human-readable flags for every modeling choice that is not forced by
    the underlying physics, so emitted run manifests stay auditable.
    """

    levels: tuple[EnergyLevel, ...]
    baths: tuple[Bath, ...]
    transitions: tuple[ThermalTransition, ...]
    pumps: tuple[Pump, ...]
    extraction: Extraction
    voltage_temperature_k: float = 0.0
    assumptions: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "baths", tuple(self.baths))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "pumps", tuple(self.pumps))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        if self.voltage_temperature_k == 0.0 and self.baths:
            coldest = min(b.temperature_k for b in self.baths)
            object.__setattr__(self, "voltage_temperature_k", coldest)
        problems = validate_system(self)
        if problems:
            raise ModelError("; ".join(problems))

    @property
    def level_names(self) -> tuple[str, ...]:
        return tuple(lv.name for lv in self.levels)

    def level_index(self, name: str) -> int:
        for i, lv in enumerate(self.levels):
            if lv.name == name:
                return i
        raise ModelError(f"unknown level {name!r}")

    def energy(self, name: str) -> float:
        return self.levels[self.level_index(name)].energy_ev

    def bath(self, name: str) -> Bath:
        for b in self.baths:
            if b.name == name:
                return b
        raise ModelError(f"unknown bath {name!r}")

    def total_pump_rate(self) -> float:
        return sum(p.rate_per_s for p in self.pumps)

    def pump_energy_ev(self) -> float:
        """Rate-weighted photon energy of the pump channels."""
        total = self.total_pump_rate()
        if total <= 0:
            raise ModelError("system has no active pump")
        return sum(
            p.rate_per_s * (self.energy(p.upper) - self.energy(p.lower))
            for p in self.pumps
        ) / total

    def with_gamma_load(self, gamma_load_per_s: float, chi: float | None = None) -> "LevelSystem":
        ext = replace(
            self.extraction,
            gamma_load_per_s=gamma_load_per_s,
            chi=self.extraction.chi if chi is None else chi,
        )
        return replace(self, extraction=ext)

    def with_total_pump_rate(self, total_rate_per_s: float) -> "LevelSystem":
        """Rescale all pump channels to a new total rate, keeping their split.

        A multi-pump system (e.g. two uncoupled donors driven at W/2 each)
        keeps its relative weights; a single pump is simply re-rated.
        """
        old_total = self.total_pump_rate()
        if old_total <= 0:
            raise ModelError("cannot rescale pumps: system has no active pump")
        scale = total_rate_per_s / old_total
        new_pumps = tuple(
            replace(p, rate_per_s=p.rate_per_s * scale) for p in self.pumps
        )
        return replace(self, pumps=new_pumps)


@dataclass(frozen=True)
class RateMatrix:
    """Generator M of dP/dt = M.P over an ordered level basis."""

    level_names: tuple[str, ...]
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.level_names)

    @property
    def max_entry(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def index(self, name: str) -> int:
        return self.level_names.index(name)


def validate_system(system: LevelSystem) -> list[str]:
    """All structural violations of a LevelSystem, not just the first."""
    problems: list[str] = []
    names = [lv.name for lv in system.levels]
    if len(set(names)) != len(names):
        problems.append("level names are not unique")
    for lv in system.levels:
        if not np.isfinite(lv.energy_ev):
            problems.append(f"level {lv.name!r}: energy is not finite")
    bath_names = [b.name for b in system.baths]
    if len(set(bath_names)) != len(bath_names):
        problems.append("bath names are not unique")

    def known(level: str) -> bool:
        return level in names

    energies = {lv.name: lv.energy_ev for lv in system.levels}
    for t in system.transitions:
        where = f"transition {t.lower!r}<->{t.upper!r}"
        if not known(t.lower) or not known(t.upper):
            problems.append(f"{where}: dangling level name")
            continue
        if energies[t.upper] <= energies[t.lower]:
            problems.append(f"{where}: upper level must lie above lower")
        if t.gamma_per_s <= 0:
            problems.append(f"{where}: gamma_per_s must be > 0, got {t.gamma_per_s}")
        if t.bath not in bath_names:
            problems.append(f"{where}: unknown bath {t.bath!r}")
    for p in system.pumps:
        where = f"pump {p.lower!r}->{p.upper!r}"
        if not known(p.lower) or not known(p.upper):
            problems.append(f"{where}: dangling level name")
            continue
        if p.lower == p.upper:
            problems.append(f"{where}: pump must connect two distinct levels")
        elif energies[p.upper] <= energies[p.lower]:
            problems.append(f"{where}: upper level must lie above lower")
        if p.rate_per_s < 0:
            problems.append(f"{where}: rate_per_s must be >= 0, got {p.rate_per_s}")
    ext = system.extraction
    for role, level in (
        ("source", ext.source),
        ("sink", ext.sink),
        ("recomb_target", ext.recomb_target),
    ):
        if not known(level):
            problems.append(f"extraction {role}: dangling level name {level!r}")
    if ext.source == ext.sink:
        problems.append("extraction: source and sink must differ")
    if ext.gamma_load_per_s < 0:
        problems.append(f"extraction: gamma_load_per_s must be >= 0, got {ext.gamma_load_per_s}")
    if ext.chi < 0:
        problems.append(f"extraction: chi must be >= 0, got {ext.chi}")
    if system.voltage_temperature_k <= 0:
        problems.append(
            f"voltage_temperature_k must be > 0, got {system.voltage_temperature_k}"
        )
    if not problems:
        unreachable = _unreachable_levels(system)
        if unreachable:
            problems.append(
                "transition/pump graph is disconnected; unreachable levels: "
                + ", ".join(sorted(unreachable))
            )
    return problems


def _unreachable_levels(system: LevelSystem) -> set[str]:
    """Levels not connected to the first level by any active channel."""
    adjacency: dict[str, set[str]] = {lv.name: set() for lv in system.levels}

    def join(a: str, b: str):
        adjacency[a].add(b)
        adjacency[b].add(a)

    for t in system.transitions:
        join(t.lower, t.upper)
    for p in system.pumps:
        if p.rate_per_s > 0:
            join(p.lower, p.upper)
    ext = system.extraction
    if ext.gamma_load_per_s > 0:
        join(ext.source, ext.sink)
        if ext.chi > 0:
            join(ext.source, ext.recomb_target)

    seen = {system.levels[0].name}
    frontier = [system.levels[0].name]
    while frontier:
        current = frontier.pop()
        for neighbor in adjacency[current]:
            if neighbor not in seen:
                seen.add(neighbor)
                frontier.append(neighbor)
    return {lv.name for lv in system.levels} - seen


def build_rate_matrix(system: LevelSystem) -> RateMatrix:
    """Compile a LevelSystem to its master-equation generator.

    Columns sum to zero by construction: every off-diagonal contribution
    M[j,i] is balanced by -M[i,i], so total probability is conserved.
    """
    n_levels = len(system.levels)
    index = {lv.name: i for i, lv in enumerate(system.levels)}
    matrix = np.zeros((n_levels, n_levels))

    def add_rate(src: str, dst: str, rate: float):
        i, j = index[src], index[dst]
        matrix[j, i] += rate
        matrix[i, i] -= rate

    for t in system.transitions:
        delta_e = system.energy(t.upper) - system.energy(t.lower)
        occupation = bose_occupation(delta_e, system.bath(t.bath).temperature_k)
        add_rate(t.lower, t.upper, t.gamma_per_s * occupation)
        add_rate(t.upper, t.lower, t.gamma_per_s * (occupation + 1.0))
    for p in system.pumps:
        if p.rate_per_s > 0:
            add_rate(p.lower, p.upper, p.rate_per_s)
            add_rate(p.upper, p.lower, p.rate_per_s)
    ext = system.extraction
    if ext.gamma_load_per_s > 0:
        add_rate(ext.source, ext.sink, ext.gamma_load_per_s)
        if ext.chi > 0:
            add_rate(ext.source, ext.recomb_target, ext.chi * ext.gamma_load_per_s)

    matrix.setflags(write=False)
    return RateMatrix(system.level_names, matrix)
