"""Exception and warning types shared across the package."""


class GreendryError(Exception):
    """Base class for all package errors."""


class RangeError(GreendryError, ValueError):
    """An input fell outside the validity range of a correlation or table."""


class ConfigError(GreendryError, ValueError):
    """A dryer configuration value is missing, malformed or non-physical."""


class WeatherError(GreendryError, ValueError):
    """A weather file or series is malformed or does not cover the horizon."""


class KineticsError(GreendryError, ValueError):
    """The thin-layer drying model is invalid at the requested conditions."""


class SingularMatrixError(GreendryError, ValueError):
    """Gauss-Jordan elimination hit a pivot below the singularity threshold."""

    def __init__(self, column: int, pivot: float):
        self.column = column
        self.pivot = pivot
        super().__init__(
            f"singular matrix: pivot magnitude {abs(pivot):.3e} in column "
            f"{column} is below threshold"
        )


class SimulationError(GreendryError, RuntimeError):
    """A simulation step produced a non-finite value or otherwise failed."""


class ComparisonError(GreendryError, ValueError):
    """Predicted/observed series cannot be compared."""


class EconomicsError(GreendryError, ValueError):
    """The economic inputs admit no finite payback."""


class GridSizeError(GreendryError, ValueError):
    """A sweep grid exceeds the configured size cap."""


class ConfigWarning(UserWarning):
    """Non-fatal, non-physical configuration detected (e.g. sky hotter than
    ambient from a bad sky coefficient)."""
