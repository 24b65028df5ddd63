"""Transfer operators, Gibbs states and KMS checks on full shifts."""

from ._core import (
    ConfigError,
    Error,
    cylinders,
    equilibrium,
    ff_pressure,
    ff_summary,
    kms_check,
    normalize,
    pressure,
    run_cli,
    spectrum,
    zeta,
)

__all__ = [
    "ConfigError",
    "Error",
    "cylinders",
    "equilibrium",
    "ff_pressure",
    "ff_summary",
    "kms_check",
    "normalize",
    "pressure",
    "run_cli",
    "spectrum",
    "zeta",
]
__version__ = "0.1.0"
