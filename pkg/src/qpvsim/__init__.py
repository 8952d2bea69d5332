"""qpvsim: rate-equation simulator for N-level quantum-heat-engine photocells."""

__version__ = "0.1.0"

from .config import ingest_config, save_config, system_from_config, system_to_config
from .dynamics import (
    PopulationState,
    SteadyStateReport,
    integrate_rk4,
    steady_state_direct,
    steady_state_integrated,
    uniform_state,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
    EmissionError,
    FitError,
    ModelError,
    QpvError,
    StepSizeError,
    SweepError,
    UndefinedVoltageError,
)
from .observables import EfficiencyPoint, OperatingPoint, current, efficiency, voltage
from .presets import (
    PRESETS,
    build_preset,
    preset_model_a,
    preset_model_b,
    preset_model_c,
)
from .radiometry import (
    CONSTANTS,
    Bath,
    FluxResult,
    PhysicalConstants,
    bose_occupation,
    planck_photon_flux,
    pump_rate_to_area,
)
from .rate_network import (
    EnergyLevel,
    Extraction,
    LevelSystem,
    Pump,
    RateMatrix,
    ThermalTransition,
    build_rate_matrix,
)
from .sweeps import (
    IVCurve,
    PumpSweep,
    PumpSweepPoint,
    SaturationFit,
    fit_saturation,
    fit_saturation_arrays,
    iv_sweep,
    max_power_point,
    pump_sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
