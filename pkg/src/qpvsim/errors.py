"""Exception types shared across the simulator."""


class QpvError(Exception):
    """Base class for all simulator errors."""


class DomainError(QpvError, ValueError):
    """An argument lies outside the physical domain of an operation."""


class ModelError(QpvError):
    """A level system or rate matrix violates a structural invariant."""


class ConfigError(QpvError):
    """A model config file failed to parse or validate."""


class StepSizeError(QpvError):
    """Requested integrator step violates the stability guard."""


class ConvergenceError(QpvError):
    """An iterative solve exhausted its budget before converging."""


class DegeneracyError(QpvError):
    """The rate-matrix null space is not one-dimensional."""


class UndefinedVoltageError(QpvError):
    """Voltage is undefined because an electrode population vanished."""


class SweepError(QpvError):
    """A parameter sweep produced no usable points."""


class FitError(QpvError):
    """Curve fitting failed or the supplied data are degenerate."""


class EmissionError(QpvError):
    """Output emission failed or was handed unusable data."""
