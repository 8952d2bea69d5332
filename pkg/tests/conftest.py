"""Shared test helpers: randomized level-system generation."""

import numpy as np
import pytest

from qpvsim import Bath, EnergyLevel, Extraction, LevelSystem, Pump, ThermalTransition


def random_system(rng: np.random.Generator, n_levels: int | None = None) -> LevelSystem:
    """A random connected level system with bounded rate spread.

    Rates span two decades and level spacings stay above 0.04 eV so the
    integrated solver converges quickly and Bose factors stay sane; the
    topology is a random spanning tree plus a few extra edges, with an
    optional pump and extraction channel.
    """
    n = int(n_levels if n_levels is not None else rng.integers(3, 7))
    gaps = rng.uniform(0.04, 0.20, size=n - 1)
    energies = np.concatenate([[0.0], np.cumsum(gaps)])
    levels = tuple(EnergyLevel(f"L{i}", float(e)) for i, e in enumerate(energies))

    n_baths = int(rng.integers(1, 3))
    baths = tuple(
        Bath(f"B{i}", float(rng.uniform(250.0, 4000.0))) for i in range(n_baths)
    )

    def rate():
        return float(10.0 ** rng.uniform(9.5, 11.5))

    transitions = []
    seen_pairs = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        transitions.append(
            ThermalTransition(f"L{j}", f"L{i}", rate(), f"B{rng.integers(0, n_baths)}")
        )
        seen_pairs.add((j, i))
    for _ in range(int(rng.integers(0, n))):
        a, b = sorted(rng.choice(n, size=2, replace=False).tolist())
        if (a, b) in seen_pairs:
            continue
        seen_pairs.add((a, b))
        transitions.append(
            ThermalTransition(f"L{a}", f"L{b}", rate(), f"B{rng.integers(0, n_baths)}")
        )

    pumps = ()
    if rng.random() < 0.5:
        a, b = sorted(rng.choice(n, size=2, replace=False).tolist())
        pumps = (Pump(f"L{a}", f"L{b}", rate()),)

    source, sink = rng.choice(n, size=2, replace=False).tolist()
    recomb_choices = [i for i in range(n) if i != source]
    recomb = int(rng.choice(recomb_choices))
    extraction = Extraction(
        f"L{source}",
        f"L{sink}",
        rate() if rng.random() < 0.5 else 0.0,
        float(rng.uniform(0.0, 1.0)) if rng.random() < 0.3 else 0.0,
        f"L{recomb}",
    )

    return LevelSystem(levels, baths, tuple(transitions), pumps, extraction)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
