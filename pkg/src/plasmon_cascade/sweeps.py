"""Geometry/filter sweeps of the filtered polarization entanglement."""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

import numpy as np

from .config import SimulationConfig, config_from_values
from .entanglement import SpectralWindow, refined_filtered_integrals
from .errors import ConfigError, NumericalError, SingularityError, ValidationError
from .pipeline import SystemModel, build_system
from .units import ATOMIC


@dataclass(frozen=True)
class SweepPoint:
    r_nm: float
    h_nm: float
    w_mev: float


def concurrence_point(config: SimulationConfig, point: SweepPoint,
                      system: SystemModel | None = None) -> dict:
    """One sweep row: rebuild the model for the geometry and filter it."""
    cfg = config.with_geometry(radius_nm=point.r_nm, distance_nm=point.h_nm)
    model = system or build_system(cfg)
    params = model.params
    window = SpectralWindow(
        width=ATOMIC.mev_to_internal(point.w_mev),
        omega0=params.omega0,
        delta_xx=params.delta_xx,
        mode=cfg.cascade.window_mode,
    )
    fe = refined_filtered_integrals(params, window)
    gamma_prime = abs(fe.gamma_prime)
    if not 0.0 <= 2.0 * gamma_prime <= 1.0 + 1e-9:
        raise NumericalError(
            f"filtered concurrence out of bounds: 2|gamma'| = {2 * gamma_prime}")
    return {
        "r_nm": point.r_nm,
        "h_nm": point.h_nm,
        "h_over_r": point.h_nm / point.r_nm,
        "w_mev": point.w_mev,
        "gamma_prime_abs": gamma_prime,
        "concurrence": 2.0 * gamma_prime,
        "t_weight": fe.alpha_sq,
        "h_weight": fe.beta_sq,
        "error": "",
        "warnings": "; ".join(model.warnings),
    }


def _error_row(point: SweepPoint, message: str) -> dict:
    return {
        "r_nm": point.r_nm, "h_nm": point.h_nm,
        "h_over_r": point.h_nm / point.r_nm, "w_mev": point.w_mev,
        "gamma_prime_abs": float("nan"), "concurrence": float("nan"),
        "t_weight": float("nan"), "h_weight": float("nan"),
        "error": message, "warnings": "",
    }


def _eval_geometry(args) -> list[dict]:
    """Worker: all rows sharing one geometry (config raw dict is picklable)."""
    raw, r_nm, h_nm, w_values = args
    config = config_from_values(raw)
    cfg = config.with_geometry(radius_nm=r_nm, distance_nm=h_nm)
    rows = []
    try:
        model = build_system(cfg)
    except (NumericalError, SingularityError) as exc:
        return [_error_row(SweepPoint(r_nm, h_nm, w), f"{type(exc).__name__}: {exc}")
                for w in w_values]
    for w in w_values:
        point = SweepPoint(r_nm, h_nm, w)
        try:
            rows.append(concurrence_point(cfg, point, system=model))
        except (NumericalError, SingularityError, ArithmeticError) as exc:
            rows.append(_error_row(point, f"{type(exc).__name__}: {exc}"))
    return rows


def concurrence_sweep(config: SimulationConfig, points: list[SweepPoint],
                      workers: int = 1) -> list[dict]:
    """Evaluate every point, grouping by geometry so the LDOS pipeline runs
    once per (R, h).  Numerical failures land in the row's error column;
    invalid parameter values abort the sweep.
    """
    for p in points:
        if p.r_nm <= 0 or p.h_nm <= 0 or p.w_mev <= 0:
            raise ValidationError(f"invalid sweep point {p}")
    geometries: dict[tuple, list[float]] = {}
    order: dict[tuple, int] = {}
    for idx, p in enumerate(points):
        key = (p.r_nm, p.h_nm)
        geometries.setdefault(key, []).append(p.w_mev)
        order.setdefault((p.r_nm, p.h_nm, p.w_mev), idx)
    tasks = [(config.raw, r, h, w_values)
             for (r, h), w_values in geometries.items()]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            groups = pool.map(_eval_geometry, tasks)
    else:
        groups = [_eval_geometry(t) for t in tasks]
    rows = [row for group in groups for row in group]
    rows.sort(key=lambda row: order[(row["r_nm"], row["h_nm"], row["w_mev"])])
    return rows


def _parse_number_list(text: str) -> list[float]:
    text = text.strip()
    if ":" in text and "," not in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range must be start:stop:count, got {text!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ConfigError(f"range count must be >= 1, got {count}")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [float(v) for v in text.split(",") if v.strip()]


def parse_sweep_spec(text: str, config: SimulationConfig,
                     source: str = "<sweep>") -> list[SweepPoint]:
    """Sweep-spec format: lines of 'r_nm = ...', 'h_nm = ...' or
    'h_over_r = ...', 'w_mev = ...'; values are comma lists or
    start:stop:count ranges. The Cartesian product defines the points."""
    values: dict[str, list[float]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = values'")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in ("r_nm", "h_nm", "h_over_r", "w_mev"):
            raise ConfigError(f"{source}:{lineno}: unknown sweep key {key!r}")
        try:
            values[key] = _parse_number_list(raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad values: {exc}") from exc
    if "h_nm" in values and "h_over_r" in values:
        raise ConfigError(f"{source}: give h_nm or h_over_r, not both")
    r_list = values.get("r_nm", [config.units.internal_to_nm(config.geometry.radius)])
    w_list = values.get("w_mev", [config.units.internal_to_mev(config.cascade.filter_width)])
    points = []
    for r in r_list:
        if "h_over_r" in values:
            h_list = [ratio * r for ratio in values["h_over_r"]]
        elif "h_nm" in values:
            h_list = values["h_nm"]
        else:
            h_list = [config.units.internal_to_nm(config.geometry.distance)]
        for h in h_list:
            for w in w_list:
                points.append(SweepPoint(r_nm=r, h_nm=h, w_mev=w))
    return points
