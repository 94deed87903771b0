"""Solar greenhouse tunnel drier simulation engine.

Coupled cover/air/product/floor energy balances with thin-layer drying
kinetics, integrated implicitly over measured or synthetic weather, plus
validation metrics, payback economics and design-space sweeps.
"""

__version__ = "0.1.0"

from .analysis import (
    EconomicInputs,
    ErrorReport,
    acceptance_check,
    payback_period,
    percent_difference,
)
from .config import DryerConfig, apply_overrides, load_config
from .core import (
    AirProps,
    SimState,
    WeatherRecord,
    air_properties,
    humidity_ratio,
    relative_humidity,
    saturation_pressure,
)
from .solver import SimSeries, simulate, step
from .sweep import SweepSpec, drying_time_objective, grid_search
from .weather import WeatherSeries, load_csv, sample, synthetic_days

__all__ = [
    "AirProps", "DryerConfig", "EconomicInputs", "ErrorReport", "SimSeries",
    "SimState", "SweepSpec", "WeatherRecord", "WeatherSeries",
    "acceptance_check", "air_properties", "apply_overrides",
    "drying_time_objective", "grid_search", "humidity_ratio", "load_config",
    "load_csv", "payback_period", "percent_difference", "relative_humidity",
    "sample", "saturation_pressure", "simulate", "step", "synthetic_days",
]
