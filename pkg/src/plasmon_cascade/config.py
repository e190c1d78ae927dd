"""Validated parameter sets and the flat key-value config file format.

The config file is plain text, one ``key = value`` pair per line, with
``#`` comments.  Keys are documented in the README; values are given in
eV/meV/nm and converted to atomic units on load.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError, RegimeWarning
from .units import ATOMIC, UnitSystem


@dataclass(frozen=True)
class GeometryConfig:
    """Nanoparticle radius, emitter standoff and dipole moment (atomic units)."""

    radius: float
    distance: float
    dipole: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigError(f"radius must be positive, got {self.radius}")
        if not self.distance > 0:
            raise ConfigError(f"distance must be positive, got {self.distance}")
        if not self.dipole >= 0:
            raise ConfigError(f"dipole must be non-negative, got {self.dipole}")

    @classmethod
    def from_nm(cls, radius_nm: float, distance_nm: float, dipole_enm: float,
                units: UnitSystem = ATOMIC) -> "GeometryConfig":
        if radius_nm <= 0:
            raise ConfigError(f"radius_nm must be positive, got {radius_nm}")
        if distance_nm <= 0:
            raise ConfigError(f"distance_nm must be positive, got {distance_nm}")
        return cls(
            radius=units.nm_to_internal(radius_nm),
            distance=units.nm_to_internal(distance_nm),
            dipole=units.dipole_enm_to_internal(dipole_enm),
        )

    @property
    def emitter_radius(self) -> float:
        """Radial coordinate of the emitter, r_d = R + h."""
        return self.radius + self.distance

    @property
    def markovian_bound(self) -> float:
        """Minimum h/R ratio for the flat-reservoir treatment to hold.

        1.4 at R <= 7 nm, 1.0 at R >= 14 nm, linear in R in between.
        """
        r_nm = ATOMIC.internal_to_nm(self.radius)
        if r_nm <= 7.0:
            return 1.4
        if r_nm >= 14.0:
            return 1.0
        return 1.4 - 0.4 * (r_nm - 7.0) / 7.0

    @property
    def markovian_valid(self) -> bool:
        return self.distance / self.radius >= self.markovian_bound

    def warn_if_invalid(self) -> list[str]:
        msgs = []
        if not self.markovian_valid:
            msg = (
                f"h/R = {self.distance / self.radius:.3f} is below the "
                f"flat-reservoir validity bound {self.markovian_bound:.3f} "
                f"for R = {ATOMIC.internal_to_nm(self.radius):.3g} nm"
            )
            warnings.warn(msg, RegimeWarning, stacklevel=2)
            msgs.append(msg)
        return msgs


@dataclass(frozen=True)
class MaterialModel:
    """Drude metal parameters and host permittivity (atomic units)."""

    eps_inf: float = 6.0
    omega_p: float = 7.9 / ATOMIC.hartree_ev
    gamma_landau: float = 51e-3 / ATOMIC.hartree_ev
    eps_b: float = 1.0

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ConfigError(f"omega_p must be positive, got {self.omega_p}")
        if not self.gamma_landau >= 0:
            raise ConfigError(f"gamma_landau must be non-negative, got {self.gamma_landau}")
        if not self.eps_inf >= 1:
            raise ConfigError(f"eps_inf must be >= 1, got {self.eps_inf}")
        if not self.eps_b >= 1:
            raise ConfigError(f"eps_b must be >= 1, got {self.eps_b}")

    def permittivity(self, omega):
        """Drude permittivity eps_inf - omega_p^2 / (omega^2 + i*gamma*omega).

        The damping sign is chosen so Im(eps) > 0 (absorbing medium under
        the exp(-i*omega*t) convention).
        """
        return self.eps_inf - self.omega_p**2 / (omega * (omega + 1j * self.gamma_landau))


@dataclass(frozen=True)
class CascadeInputs:
    """Cascade-level knobs: splittings, detunings, dephasing, filter, grids.

    Energies are stored in atomic units; detunings are complex.
    """

    qd_energy: float = 0.0           # 0 -> anchor at the reference-geometry peak
    delta_xx: float = 1e-3 / ATOMIC.hartree_ev
    delta_x: float = 0.1e-3 / ATOMIC.hartree_ev
    detuning_x: complex = (1 - 0.01j) * 1e-3 / ATOMIC.hartree_ev
    detuning_y: complex = -(2 - 0.01j) * 1e-3 / ATOMIC.hartree_ev
    dephasing: float = 1e-6 / ATOMIC.hartree_ev
    filter_width: float = 1e-3 / ATOMIC.hartree_ev
    window_mode: str = "product"
    paper_literal_kappa: bool = False
    grid_points: int = 401
    grid_halfspan: float = 0.0       # 0 -> auto: 8 * max(kappa, delta_xx)
    ldos_omega_min: float = 2.0 / ATOMIC.hartree_ev
    ldos_omega_max: float = 4.0 / ATOMIC.hartree_ev
    ldos_points: int = 2001
    bath_modes: int = 400
    bath_span: float = 0.0           # 0 -> auto: 10 * kappa

    def __post_init__(self):
        if self.qd_energy < 0:
            raise ConfigError(f"qd_energy must be >= 0, got {self.qd_energy}")
        if not self.delta_xx > 0:
            raise ConfigError(f"delta_xx must be positive, got {self.delta_xx}")
        if not self.delta_x >= 0:
            raise ConfigError(f"delta_x must be non-negative, got {self.delta_x}")
        if not self.dephasing >= 0:
            raise ConfigError(f"dephasing must be non-negative, got {self.dephasing}")
        if not self.filter_width > 0:
            raise ConfigError(f"filter_width must be positive, got {self.filter_width}")
        if self.window_mode not in ("product", "single"):
            raise ConfigError(f"window_mode must be 'product' or 'single', got {self.window_mode!r}")
        if self.grid_points < 3 or self.grid_points % 2 == 0:
            raise ConfigError(f"grid_points must be odd and >= 3, got {self.grid_points}")
        if self.ldos_points < 10:
            raise ConfigError(f"ldos_points must be >= 10, got {self.ldos_points}")
        if not self.ldos_omega_max > self.ldos_omega_min > 0:
            raise ConfigError("ldos omega range must satisfy 0 < min < max")
        if self.bath_modes < 2:
            raise ConfigError(f"bath_modes must be >= 2, got {self.bath_modes}")


@dataclass(frozen=True)
class SimulationConfig:
    """Everything load_config produces, plus the raw key snapshot."""

    units: UnitSystem
    geometry: GeometryConfig
    material: MaterialModel
    cascade: CascadeInputs
    raw: dict = field(default_factory=dict)

    def with_geometry(self, radius_nm=None, distance_nm=None) -> "SimulationConfig":
        r = radius_nm if radius_nm is not None else self.units.internal_to_nm(self.geometry.radius)
        h = distance_nm if distance_nm is not None else self.units.internal_to_nm(self.geometry.distance)
        geom = GeometryConfig.from_nm(r, h, self.raw_value("dipole_enm"), self.units)
        raw = dict(self.raw)
        raw["radius_nm"] = float(r)
        raw["distance_nm"] = float(h)
        return replace(self, geometry=geom, raw=raw)

    def with_cascade(self, **updates) -> "SimulationConfig":
        casc = replace(self.cascade, **updates)
        return replace(self, cascade=casc)

    def raw_value(self, key: str):
        return self.raw[key]


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_complex(text: str) -> complex:
    return complex(text.replace(" ", ""))


# key -> (parser, default in I/O units)
_KEYS = {
    "radius_nm": (float, 7.0),
    "distance_nm": (float, 10.0),
    "dipole_enm": (float, 0.5),
    "eps_inf": (float, 6.0),
    "omega_p_ev": (float, 7.9),
    "gamma_mev": (float, 51.0),
    "eps_b": (float, 1.75),
    "qd_energy_ev": (float, 0.0),
    "delta_xx_mev": (float, 1.0),
    "delta_x_mev": (float, 0.1),
    "detuning_x_mev": (_parse_complex, 1 - 0.01j),
    "detuning_y_mev": (_parse_complex, -2 + 0.01j),
    "dephasing_mev": (float, 1e-3),
    "filter_width_mev": (float, 1.0),
    "window_mode": (str, "product"),
    "paper_literal_kappa": (_parse_bool, False),
    "grid_points": (int, 401),
    "grid_halfspan_mev": (float, 0.0),
    "ldos_omega_min_ev": (float, 2.0),
    "ldos_omega_max_ev": (float, 4.0),
    "ldos_points": (int, 2001),
    "bath_modes": (int, 400),
    "bath_span_mev": (float, 0.0),
}


def parse_config_text(text: str, source: str = "<string>") -> dict:
    """Parse the flat key-value format into a fully defaulted key dict."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, raw_value = stripped.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        parser, _ = _KEYS[key]
        try:
            values[key] = parser(raw_value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
    for key, (_, default) in _KEYS.items():
        values.setdefault(key, default)
    return values


def config_from_values(values: dict, units: UnitSystem = ATOMIC) -> SimulationConfig:
    """Build a validated SimulationConfig from an I/O-unit key dict."""
    geometry = GeometryConfig.from_nm(
        values["radius_nm"], values["distance_nm"], values["dipole_enm"], units)
    material = MaterialModel(
        eps_inf=values["eps_inf"],
        omega_p=units.ev_to_internal(values["omega_p_ev"]),
        gamma_landau=units.mev_to_internal(values["gamma_mev"]),
        eps_b=values["eps_b"],
    )
    cascade = CascadeInputs(
        qd_energy=units.ev_to_internal(values["qd_energy_ev"]),
        delta_xx=units.mev_to_internal(values["delta_xx_mev"]),
        delta_x=units.mev_to_internal(values["delta_x_mev"]),
        detuning_x=units.mev_to_internal(values["detuning_x_mev"]),
        detuning_y=units.mev_to_internal(values["detuning_y_mev"]),
        dephasing=units.mev_to_internal(values["dephasing_mev"]),
        filter_width=units.mev_to_internal(values["filter_width_mev"]),
        window_mode=values["window_mode"],
        paper_literal_kappa=values["paper_literal_kappa"],
        grid_points=values["grid_points"],
        grid_halfspan=units.mev_to_internal(values["grid_halfspan_mev"]),
        ldos_omega_min=units.ev_to_internal(values["ldos_omega_min_ev"]),
        ldos_omega_max=units.ev_to_internal(values["ldos_omega_max_ev"]),
        ldos_points=values["ldos_points"],
        bath_modes=values["bath_modes"],
        bath_span=units.mev_to_internal(values["bath_span_mev"]),
    )
    return SimulationConfig(units=units, geometry=geometry, material=material,
                            cascade=cascade, raw=dict(values))


def load_config(path: str | Path | None) -> SimulationConfig:
    """Load a config file (or all defaults when path is None)."""
    if path is None:
        return config_from_values(parse_config_text(""))
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return config_from_values(parse_config_text(path.read_text(), source=str(path)))


def default_config() -> SimulationConfig:
    return load_config(None)
