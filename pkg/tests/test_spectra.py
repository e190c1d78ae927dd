import warnings
from dataclasses import replace

import numpy as np
import pytest

from conftest import make_params
from plasmon_cascade.cascade import FrequencyGrid, amplitude_grid, line_width_estimates
from plasmon_cascade.errors import BoundaryLeakWarning, ValidationError
from plasmon_cascade.spectra import (
    SpectrumCurve,
    fwhm,
    fwhm_peaks,
    joint_spectrum,
    marginal_consistency,
    marginal_spectrum,
)


def zoom_grid(params, widths_factor=8.0, points=1201):
    g_x, g_y, g_ridge = line_width_estimates(params)
    half = max(widths_factor * 2 * max(g_x, g_y, g_ridge), 20 * abs(params.delta_x))
    return FrequencyGrid.zoomed(params, half, points)


@pytest.fixture
def desk_grid(desk_params):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryLeakWarning)
        return amplitude_grid(desk_params, zoom_grid(desk_params))


def test_joint_spectrum_zero_amplitudes(desk_params):
    p = replace(desk_params, g_bx_x=0.0, g_bx_y=0.0)
    agrid = amplitude_grid(p, zoom_grid(desk_params))
    assert not np.any(joint_spectrum(agrid, "x"))


def test_joint_spectrum_matches_pointwise(desk_grid):
    joint = joint_spectrum(desk_grid, "x")
    rng = np.random.default_rng(3)
    for _ in range(10):
        i = rng.integers(0, joint.shape[0])
        j = rng.integers(0, joint.shape[1])
        assert joint[i, j] == abs(desk_grid.c_x[i, j]) ** 2


def test_joint_spectrum_peaks_on_energy_ridge(desk_grid):
    p = desk_grid.params
    joint = joint_spectrum(desk_grid, "x")
    i, j = np.unravel_index(np.argmax(joint), joint.shape)
    s_peak = desk_grid.grid.m_axis[i] + desk_grid.grid.n_axis[j]
    ridge_width = line_width_estimates(p)[2]
    assert abs(s_peak - p.omega_u) < 4 * ridge_width


def test_marginals_of_symmetric_channels_match(symmetric_params):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryLeakWarning)
        agrid = amplitude_grid(symmetric_params, zoom_grid(symmetric_params))
    for axis in ("exciton", "biexciton"):
        mx = marginal_spectrum(agrid, "x", axis)
        my = marginal_spectrum(agrid, "y", axis)
        np.testing.assert_allclose(mx.values, my.values, rtol=1e-10)


def test_marginal_axis_选off_centers(desk_grid):
    p = desk_grid.params
    ex = marginal_spectrum(desk_grid, "x", "exciton")
    bx = marginal_spectrum(desk_grid, "x", "biexciton")
    # exciton marginal peaks near +delta_x/2, biexciton near -delta_xx - delta_x/2
    assert abs(ex.offsets[np.argmax(ex.values)] - 0.5 * p.delta_x) <= 2 * desk_grid.grid.dn
    assert abs(bx.offsets[np.argmax(bx.values)] + p.delta_xx + 0.5 * p.delta_x) <= 2 * desk_grid.grid.dm


def test_boundary_leak_warning_on_narrow_grid(desk_params):
    grid = FrequencyGrid.zoomed(desk_params, 6 * desk_params.gamma_ex, 301)
    agrid = amplitude_grid(desk_params, grid)
    with pytest.warns(BoundaryLeakWarning):
        marginal_spectrum(agrid, "x", "exciton")


def test_fwhm_of_synthetic_lorentzian():
    x = np.linspace(-50, 50, 20001)
    hwhm = 1.0
    curve = SpectrumCurve(axis="exciton", channel="x", offsets=x,
                          values=1.0 / (x**2 + hwhm**2), total_weight=1.0)
    assert fwhm(curve) == pytest.approx(2.0, rel=0.02)


def test_fwhm_requires_crossings():
    x = np.linspace(-1, 1, 101)
    curve = SpectrumCurve(axis="exciton", channel="x", offsets=x,
                          values=np.ones_like(x), total_weight=1.0)
    with pytest.raises(ValidationError):
        fwhm(curve)


def test_fwhm_peaks_resolves_doublet():
    x = np.linspace(-10, 10, 4001)
    values = 1 / ((x - 2) ** 2 + 0.25) + 1 / ((x + 2) ** 2 + 0.25)
    curve = SpectrumCurve(axis="exciton", channel="x", offsets=x,
                          values=values, total_weight=1.0)
    peaks = fwhm_peaks(curve)
    assert len(peaks) == 2
    assert peaks[0][0] == pytest.approx(-2.0, abs=0.02)
    assert peaks[1][0] == pytest.approx(2.0, abs=0.02)


def test_marginal_consistency_fubini(desk_grid):
    a, b = marginal_consistency(desk_grid, "x")
    assert abs(a - b) / abs(a) < 1e-10


def test_grid_refinement_stability(desk_params):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryLeakWarning)
        coarse = amplitude_grid(desk_params, zoom_grid(desk_params, points=801))
        fine = amplitude_grid(desk_params, zoom_grid(desk_params, points=1601))
    mc = marginal_spectrum(coarse, "x", "exciton")
    mf = marginal_spectrum(fine, "x", "exciton")
    peak_c = mc.offsets[np.argmax(mc.values)]
    peak_f = mf.offsets[np.argmax(mf.values)]
    step_c = mc.offsets[1] - mc.offsets[0]
    assert abs(peak_c - peak_f) <= 0.5 * step_c + 1e-18
    assert abs(mc.total_weight - mf.total_weight) / mf.total_weight < 1e-4


def test_peak_normalized_copy(desk_grid):
    curve = marginal_spectrum(desk_grid, "x", "exciton")
    normed = curve.peak_normalized()
    assert np.max(normed.values) == pytest.approx(1.0)
    assert curve.total_weight == normed.total_weight
