"""Joint and marginal emission spectra of the photon pair.

The joint spectrum of a channel is |c|^2 on the (omega_m, omega_n) grid.
Marginals integrate out one axis with the trapezoid rule: integrating
over the exciton axis leaves the biexciton-photon line (near
omega - omega0 = -delta_xx) and vice versa.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .cascade import AmplitudeGrid
from .errors import BoundaryLeakWarning, ValidationError

_LEAK_THRESHOLD = 1e-6


def joint_spectrum(agrid: AmplitudeGrid, channel: str) -> np.ndarray:
    """|c|^2 of one polarization channel on the full grid."""
    c = agrid.channel(channel)
    return np.abs(c) ** 2


@dataclass(frozen=True)
class SpectrumCurve:
    """One marginal spectrum, reported against omega - omega0."""

    axis: str          # "exciton" or "biexciton"
    channel: str       # "x" or "y"
    offsets: np.ndarray
    values: np.ndarray
    total_weight: float

    def peak_normalized(self) -> "SpectrumCurve":
        peak = float(np.max(self.values))
        if peak <= 0:
            return self
        return replace(self, values=self.values / peak)


def _check_boundary(values: np.ndarray) -> None:
    peak = float(np.max(values))
    if peak <= 0:
        return
    edge = max(values[0, :].max(), values[-1, :].max(),
               values[:, 0].max(), values[:, -1].max())
    if edge > _LEAK_THRESHOLD * peak:
        warnings.warn(
            f"grid boundary carries {edge / peak:.2e} of the joint-spectrum "
            "peak; marginals truncate the line tails", BoundaryLeakWarning,
            stacklevel=3)


def marginal_spectrum(agrid: AmplitudeGrid, channel: str, axis: str) -> SpectrumCurve:
    """Integrate the joint spectrum over the opposite frequency axis.

    axis="exciton" integrates over omega_m and returns the spectrum of the
    second emitted photon; axis="biexciton" integrates over omega_n.
    """
    if axis not in ("exciton", "biexciton"):
        raise ValidationError(f"axis must be 'exciton' or 'biexciton', got {axis!r}")
    joint = joint_spectrum(agrid, channel)
    _check_boundary(joint)
    grid = agrid.grid
    omega0 = agrid.params.omega0
    if axis == "exciton":
        values = np.trapezoid(joint, x=grid.m_axis, axis=0)
        offsets = grid.n_axis - omega0
        total = float(np.trapezoid(values, x=grid.n_axis))
    else:
        values = np.trapezoid(joint, x=grid.n_axis, axis=1)
        offsets = grid.m_axis - omega0
        total = float(np.trapezoid(values, x=grid.m_axis))
    return SpectrumCurve(axis=axis, channel=channel, offsets=offsets,
                         values=np.asarray(values), total_weight=total)


def _crossings(x: np.ndarray, y: np.ndarray, level: float) -> list[float]:
    out = []
    for k in range(len(x) - 1):
        y0, y1 = y[k], y[k + 1]
        if (y0 - level) * (y1 - level) < 0 or y0 == level:
            frac = (level - y0) / (y1 - y0) if y1 != y0 else 0.0
            out.append(float(x[k] + frac * (x[k + 1] - x[k])))
    return out


def fwhm(curve: SpectrumCurve) -> float:
    """Full width at half maximum of the dominant peak, by interpolation."""
    x = np.asarray(curve.offsets, dtype=float)
    y = np.asarray(curve.values, dtype=float)
    i_max = int(np.argmax(y))
    level = 0.5 * y[i_max]
    crossings = _crossings(x, y, level)
    left = [c for c in crossings if c <= x[i_max]]
    right = [c for c in crossings if c >= x[i_max]]
    if not left or not right:
        raise ValidationError("half-maximum crossing outside the sampled range; "
                              "widen the grid")
    return right[0] - left[-1]


def fwhm_peaks(curve: SpectrumCurve, min_fraction: float = 0.2) -> list[tuple[float, float]]:
    """(center, fwhm) for every local peak above min_fraction of the maximum."""
    x = np.asarray(curve.offsets, dtype=float)
    y = np.asarray(curve.values, dtype=float)
    floor = min_fraction * float(np.max(y))
    results = []
    for i in range(1, len(x) - 1):
        if y[i] >= y[i - 1] and y[i] > y[i + 1] and y[i] > floor:
            level = 0.5 * y[i]
            crossings = _crossings(x, y, level)
            left = [c for c in crossings if c <= x[i]]
            right = [c for c in crossings if c >= x[i]]
            if left and right:
                results.append((float(x[i]), right[0] - left[-1]))
    return results


def marginal_consistency(agrid: AmplitudeGrid, channel: str) -> tuple[float, float]:
    """Total weight integrated in both axis orders (discrete Fubini check)."""
    joint = joint_spectrum(agrid, channel)
    grid = agrid.grid
    by_m_first = float(np.trapezoid(np.trapezoid(joint, x=grid.m_axis, axis=0), x=grid.n_axis))
    by_n_first = float(np.trapezoid(np.trapezoid(joint, x=grid.n_axis, axis=1), x=grid.m_axis))
    return by_m_first, by_n_first


def _feature_axis(center: float, fine_width: float, coarse_span: float,
                  fine_points: int = 1200, tail_points: int = 220) -> np.ndarray:
    """Nonuniform axis: dense core around a narrow feature, log-spaced tails."""
    core = np.linspace(center - fine_width, center + fine_width, fine_points)
    tail = np.geomspace(fine_width, coarse_span, tail_points)[1:]
    return np.unique(np.concatenate([center - tail[::-1], core, center + tail]))


def total_emission_probability(params) -> float:
    """Integral of |c_x|^2 + |c_y|^2 over both frequency axes.

    Uses pair-sum and exciton-frequency coordinates so the narrow ridge and
    the narrow emission lines each get a dense axis; the broad plasmon
    background is covered by logarithmic tails out to several linewidths.
    """
    from .cascade import line_width_estimates, two_photon_amplitude

    g_x, g_y, g_ridge = line_width_estimates(params)
    kappa = max(params.kappa_x, params.kappa_y)
    s_axis = _feature_axis(params.omega_u, 60.0 * g_ridge, 4.0 * kappa)
    lines = sorted([params.omega_x, params.omega_y])
    fine_n = 60.0 * max(g_x, g_y) + (lines[1] - lines[0])
    n_axis = _feature_axis(0.5 * (lines[0] + lines[1]), fine_n, 4.0 * kappa)
    s_grid, n_grid = np.meshgrid(s_axis, n_axis, indexing="ij")
    m_grid = s_grid - n_grid
    density = (np.abs(two_photon_amplitude(m_grid, n_grid, "x", params)) ** 2
               + np.abs(two_photon_amplitude(m_grid, n_grid, "y", params)) ** 2)
    return float(np.trapezoid(np.trapezoid(density, x=n_axis, axis=1), x=s_axis))
