"""Dryer configuration: one validated bundle of geometry, materials, airflow,
kinetics coefficients and numerics, loadable from YAML with dotted-path
overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigError


@dataclass(frozen=True)
class Geometry:
    W: float       # floor width, m
    D: float       # average floor-to-cover distance, m
    A_c: float     # cover area, m^2
    A_f: float     # floor area, m^2
    A_p: float     # product area, m^2
    V: float       # chamber volume, m^3
    D_p: float     # product layer thickness, m


@dataclass(frozen=True)
class Cover:
    m_c: float       # mass, kg
    C_pc: float      # specific heat, J kg^-1 K^-1
    alpha_c: float   # absorptance
    tau_c: float     # transmittance
    eps_c: float     # emissivity
    k_c: float       # conductivity, W m^-1 K^-1
    delta_c: float   # thickness, m


@dataclass(frozen=True)
class Floor:
    alpha_f: float   # absorptance
    k_f: float       # conductivity, W m^-1 K^-1
    h_dfg: float     # floor-to-underground conductance, W m^-2 K^-1
    T_deep: float    # deep-soil temperature, K


@dataclass(frozen=True)
class Product:
    m_p: float       # dry matter mass, kg
    rho_p: float     # dry bulk density, kg m^-3
    C_pp: float      # dry product specific heat, J kg^-1 K^-1
    C_pl: float      # liquid water specific heat, J kg^-1 K^-1
    C_pv: float      # water vapour specific heat, J kg^-1 K^-1
    alpha_p: float   # absorptance
    eps_p: float     # emissivity
    L_p: float       # latent heat of vaporisation, J kg^-1
    M_0_pct: float   # initial moisture, % dry basis
    F_p: float       # fraction of transmitted radiation falling on product


@dataclass(frozen=True)
class Airflow:
    V_in: float      # inlet flow rate, m^3 s^-1
    V_out: float     # outlet flow rate, m^3 s^-1
    V_a: float       # internal air speed, m s^-1
    T_in: float      # inlet air temperature, K
    H_in: float      # inlet humidity ratio, kg/kg


@dataclass(frozen=True)
class Kinetics:
    b0: float        # equilibrium-moisture isotherm coefficients
    b1: float
    b2: float
    c_sky: float = 0.0550   # sky temperature coefficient, T_s = c_sky T_am^1.5


@dataclass(frozen=True)
class Numerics:
    dt: float = 60.0                      # time step, s
    pressure: float = 101325.0            # total pressure, Pa
    linearization: str = "previous-step"  # coefficient freezing mode


@dataclass(frozen=True)
class DryerConfig:
    geometry: Geometry
    cover: Cover
    floor: Floor
    product: Product
    airflow: Airflow
    kinetics: Kinetics
    numerics: Numerics = field(default_factory=Numerics)

    def __post_init__(self):
        g, c, f, p, a, k, n = (self.geometry, self.cover, self.floor,
                               self.product, self.airflow, self.kinetics,
                               self.numerics)
        positive = {
            "geometry.W": g.W, "geometry.D": g.D, "geometry.A_c": g.A_c,
            "geometry.A_f": g.A_f, "geometry.A_p": g.A_p, "geometry.V": g.V,
            "geometry.D_p": g.D_p, "cover.m_c": c.m_c, "cover.C_pc": c.C_pc,
            "cover.delta_c": c.delta_c, "product.m_p": p.m_p,
            "product.rho_p": p.rho_p, "product.C_pp": p.C_pp,
            "product.C_pl": p.C_pl, "product.C_pv": p.C_pv,
            "product.L_p": p.L_p, "product.M_0_pct": p.M_0_pct,
            "floor.T_deep": f.T_deep, "airflow.T_in": a.T_in,
            "numerics.dt": n.dt, "numerics.pressure": n.pressure,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ConfigError(f"{name} must be > 0, got {value}")
        fractions = {
            "cover.alpha_c": c.alpha_c, "cover.tau_c": c.tau_c,
            "cover.eps_c": c.eps_c, "floor.alpha_f": f.alpha_f,
            "product.alpha_p": p.alpha_p, "product.eps_p": p.eps_p,
            "product.F_p": p.F_p,
        }
        for name, value in fractions.items():
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if c.alpha_c + c.tau_c > 1.0:
            raise ConfigError(
                f"cover absorptance + transmittance must be <= 1, got "
                f"{c.alpha_c + c.tau_c}"
            )
        nonneg = {
            "cover.k_c": c.k_c, "floor.k_f": f.k_f, "floor.h_dfg": f.h_dfg,
            "airflow.V_in": a.V_in, "airflow.V_out": a.V_out,
            "airflow.V_a": a.V_a, "airflow.H_in": a.H_in,
        }
        for name, value in nonneg.items():
            if value < 0:
                raise ConfigError(f"{name} must be >= 0, got {value}")
        if k.b2 == 0:
            raise ConfigError("kinetics.b2 must be nonzero")
        if n.linearization != "previous-step":
            raise ConfigError(
                f"unknown linearization mode {n.linearization!r}; "
                "only 'previous-step' is supported"
            )

    @property
    def M_0(self) -> float:
        """Initial moisture, decimal dry basis."""
        return self.product.M_0_pct / 100.0

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_SECTIONS = {
    "geometry": Geometry,
    "cover": Cover,
    "floor": Floor,
    "product": Product,
    "airflow": Airflow,
    "kinetics": Kinetics,
    "numerics": Numerics,
}


def config_from_dict(data: dict) -> DryerConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    kwargs = {}
    for section, cls in _SECTIONS.items():
        raw = data.get(section)
        if raw is None:
            if section == "numerics":
                kwargs[section] = Numerics()
                continue
            raise ConfigError(f"missing config section {section!r}")
        if not isinstance(raw, dict):
            raise ConfigError(f"config section {section!r} must be a mapping")
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - names
        if unknown:
            raise ConfigError(f"unknown keys in {section!r}: {sorted(unknown)}")
        coerced = {}
        for key, value in raw.items():
            if key == "linearization":
                coerced[key] = str(value)
                continue
            try:
                # YAML 1.1 reads exponents like 2.358e6 as strings
                coerced[key] = float(value)
            except (TypeError, ValueError):
                raise ConfigError(
                    f"{section}.{key} must be numeric, got {value!r}"
                ) from None
        try:
            kwargs[section] = cls(**coerced)
        except TypeError as exc:
            raise ConfigError(f"section {section!r}: {exc}") from None
    extra = set(data) - set(_SECTIONS)
    if extra:
        raise ConfigError(f"unknown config sections: {sorted(extra)}")
    return DryerConfig(**kwargs)


def load_config(path) -> DryerConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    return config_from_dict(data)


def apply_overrides(cfg: DryerConfig, assignments: dict[str, float]) -> DryerConfig:
    """Return a new config with dotted-path overrides applied, e.g.
    {"airflow.V_in": 0.2}; re-validates the result."""
    data = cfg.to_dict()
    for path, value in assignments.items():
        parts = path.split(".")
        if len(parts) != 2 or parts[0] not in _SECTIONS:
            raise ConfigError(f"invalid override path {path!r}")
        section, name = parts
        if name not in data[section]:
            raise ConfigError(f"unknown config field {path!r}")
        if name == "linearization":
            data[section][name] = str(value)
        else:
            try:
                data[section][name] = float(value)
            except (TypeError, ValueError):
                raise ConfigError(
                    f"override {path!r} needs a numeric value, got {value!r}"
                ) from None
    return config_from_dict(data)
