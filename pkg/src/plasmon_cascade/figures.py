"""Parameter sets and data emission for the reference figures.

Each figure id maps to a fixed parameter grid; the output is CSV data
plus a sidecar text file naming the figure and the parameters used.
Plotting is left to external tools.
"""

from __future__ import annotations

import numpy as np

from .cascade import FrequencyGrid, amplitude_grid
from .config import SimulationConfig
from .errors import ValidationError
from .greens import ldos_curve
from .pipeline import build_system
from .spectra import marginal_spectrum
from .sweeps import SweepPoint, concurrence_sweep
from .units import ATOMIC

FIGURE_IDS = ("2a", "2b", "3a", "3b", "4", "5", "6a", "6b", "7",
              "8a", "8b", "8c", "8d")

# distance sets for the LDOS and spectrum panels; the largest spectrum
# distance is chosen deep enough in the narrow-line regime that the
# fine-structure splitting is resolved
_LDOS_H = {"2a": (7.0, [10.0, 12.0, 14.0, 16.0]),
           "2b": (14.0, [16.0, 20.0, 24.0])}
_SPECTRUM_H = {"4": (7.0, [10.0, 14.0, 18.0, 24.0]),
               "5": (14.0, [16.0, 20.0, 24.0, 28.0])}


def spectrum_table(config: SimulationConfig, radius_nm: float, h_nm: float,
                   points: int = 2001):
    """Marginal spectra on a shared omega - omega0 axis (meV)."""
    cfg = config.with_geometry(radius_nm=radius_nm, distance_nm=h_nm)
    system = build_system(cfg)
    params = system.params

    grid = line_resolving_grid(params, cfg)
    agrid = amplitude_grid(params, grid)
    curves = {
        ("x", "exciton"): marginal_spectrum(agrid, "x", "exciton"),
        ("y", "exciton"): marginal_spectrum(agrid, "y", "exciton"),
        ("x", "biexciton"): marginal_spectrum(agrid, "x", "biexciton"),
        ("y", "biexciton"): marginal_spectrum(agrid, "y", "biexciton"),
    }
    half_span = float(grid.n_axis[-1] - params.omega0)
    lo = -params.delta_xx - half_span
    axis = np.linspace(lo, half_span, points)
    out = {"omega_minus_omega0_mev": ATOMIC.internal_to_mev(axis)}
    for (channel, kind), curve in curves.items():
        name = f"s{channel}_{kind}"
        out[name] = np.interp(axis, curve.offsets, curve.values,
                              left=0.0, right=0.0)
    return out, system


def line_resolving_grid(params, config: SimulationConfig) -> FrequencyGrid:
    """Frequency grid sized from the expected line width so the
    fine-structure doublet and the line shapes are resolved."""
    from .entanglement import narrowest_feature

    if config.cascade.grid_halfspan > 0:
        return FrequencyGrid.zoomed(params, config.cascade.grid_halfspan,
                                    config.cascade.grid_points)
    feature = narrowest_feature(params)
    fwhm_est = 2.0 * feature
    half_span = max(6.0 * fwhm_est, 20.0 * abs(params.delta_x))
    step = fwhm_est / 40.0
    points = int(np.clip(np.ceil(2 * half_span / step), 801, 4001))
    if points % 2 == 0:
        points += 1
    return FrequencyGrid.zoomed(params, half_span, points)


def _ldos_figure(config: SimulationConfig, fig_id: str):
    radius_nm, h_values = _LDOS_H[fig_id]
    omega = None
    columns = {}
    for h in h_values:
        cfg = config.with_geometry(radius_nm=radius_nm, distance_nm=h)
        curve = ldos_curve(cfg.geometry, cfg.material,
                           cfg.cascade.ldos_omega_min, cfg.cascade.ldos_omega_max,
                           cfg.cascade.ldos_points)
        omega = curve.frequencies
        columns[f"scaled_ldos_h{h:g}nm"] = curve.scaled_ldos
    table = {"omega_ev": ATOMIC.internal_to_ev(np.asarray(omega))}
    table.update(columns)
    note = f"R = {radius_nm} nm; h = {h_values} nm; scaled LDOS vs photon energy"
    return table, note


def _coupling_figure(config: SimulationConfig, fig_id: str):
    radius_nm = 7.0 if fig_id == "3a" else 14.0
    lo = 1.4 if fig_id == "3a" else 1.0
    ratios = np.linspace(lo, 4.0, 27)
    rows = {"h_over_r": [], "g_mev": [], "gamma_ex_mev": [], "kappa_mev": []}
    for ratio in ratios:
        row = coupling_row(config, radius_nm, ratio * radius_nm)
        rows["h_over_r"].append(ratio)
        rows["g_mev"].append(row["g_mev"])
        rows["gamma_ex_mev"].append(row["gamma_ex_mev"])
        rows["kappa_mev"].append(row["kappa_mev"])
    note = f"R = {radius_nm} nm; coupling strength and decay rate vs h/R"
    return {k: np.asarray(v) for k, v in rows.items()}, note


def coupling_row(config: SimulationConfig, radius_nm: float, h_nm: float) -> dict:
    """Coupling strength and emitter decay of one geometry, at the emitter line."""
    cfg = config.with_geometry(radius_nm=radius_nm, distance_nm=h_nm)
    system = build_system(cfg)
    return {
        "h_over_r": h_nm / radius_nm,
        "g_mev": ATOMIC.internal_to_mev(system.rates.g_ex_x),
        "gamma_ex_mev": ATOMIC.internal_to_mev(system.rates.gamma_ex),
        "kappa_mev": ATOMIC.internal_to_mev(system.rates.kappa),
    }


def _filter_map_figure(config: SimulationConfig, fig_id: str, workers: int):
    radius_nm = 7.0 if fig_id == "6a" else 14.0
    lo = 1.4 if fig_id == "6a" else 1.0
    ratios = np.linspace(lo, 4.0, 14)
    widths = np.geomspace(0.02, 2.0, 16)
    points = [SweepPoint(r_nm=radius_nm, h_nm=ratio * radius_nm, w_mev=w)
              for ratio in ratios for w in widths]
    rows = concurrence_sweep(config, points, workers=workers)
    note = (f"R = {radius_nm} nm; |gamma'| vs filter half-width and h/R; "
            "product windows")
    return rows, note


def _radius_ratio_figure(config: SimulationConfig, workers: int):
    radii = np.arange(7.0, 14.01, 1.0)
    ratios = np.linspace(1.4, 4.0, 14)
    points = [SweepPoint(r_nm=r, h_nm=ratio * r, w_mev=1.0)
              for r in radii for ratio in ratios]
    rows = concurrence_sweep(config, points, workers=workers)
    return rows, "|gamma'| vs MNP radius and h/R at w = 1 meV"


def _fixed_h_figure(config: SimulationConfig, fig_id: str, workers: int):
    h = {"8a": 14.0, "8b": 20.0, "8c": 30.0}[fig_id]
    radii = np.arange(7.0, 14.01, 0.5)
    points = [SweepPoint(r_nm=r, h_nm=h, w_mev=1.0) for r in radii]
    rows = concurrence_sweep(config, points, workers=workers)
    return rows, f"|gamma'| vs MNP radius at h = {h:g} nm, w = 1 meV"


def _radius_distance_figure(config: SimulationConfig, workers: int):
    radii = np.arange(7.0, 14.01, 0.5)
    distances = np.arange(14.0, 30.01, 2.0)
    points = [SweepPoint(r_nm=r, h_nm=h, w_mev=1.0)
              for r in radii for h in distances]
    rows = concurrence_sweep(config, points, workers=workers)
    return rows, "|gamma'| vs MNP radius and QD-MNP distance at w = 1 meV"


def figure_tables(fig_id: str, config: SimulationConfig, workers: int = 1):
    """All data tables for one figure id.

    Returns (tables, note) where tables maps a file stem to either a
    column dict or a list of row dicts.
    """
    if fig_id not in FIGURE_IDS:
        raise ValidationError(
            f"unknown figure id {fig_id!r}; known: {', '.join(FIGURE_IDS)}")
    if fig_id in ("2a", "2b"):
        table, note = _ldos_figure(config, fig_id)
        return {f"fig{fig_id}_ldos": table}, note
    if fig_id in ("3a", "3b"):
        table, note = _coupling_figure(config, fig_id)
        return {f"fig{fig_id}_coupling": table}, note
    if fig_id in ("4", "5"):
        radius_nm, h_values = _SPECTRUM_H[fig_id]
        tables = {}
        for h in h_values:
            table, _ = spectrum_table(config, radius_nm, h)
            tables[f"fig{fig_id}_spectrum_h{h:g}nm"] = table
        casc = config.cascade
        note = (f"R = {radius_nm} nm; h = {h_values} nm; "
                f"detuning_x = {ATOMIC.internal_to_mev(casc.detuning_x):.3g} meV, "
                f"detuning_y = {ATOMIC.internal_to_mev(casc.detuning_y):.3g} meV, "
                f"delta_xx = {ATOMIC.internal_to_mev(casc.delta_xx):g} meV, "
                f"delta_x = {ATOMIC.internal_to_mev(casc.delta_x):g} meV")
        return tables, note
    if fig_id in ("6a", "6b"):
        rows, note = _filter_map_figure(config, fig_id, workers)
        return {f"fig{fig_id}_filtering": rows}, note
    if fig_id == "7":
        rows, note = _radius_ratio_figure(config, workers)
        return {"fig7_radius_ratio": rows}, note
    if fig_id in ("8a", "8b", "8c"):
        rows, note = _fixed_h_figure(config, fig_id, workers)
        return {f"fig{fig_id}_radius_scan": rows}, note
    rows, note = _radius_distance_figure(config, workers)
    return {"fig8d_radius_distance": rows}, note
