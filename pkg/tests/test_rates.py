import numpy as np
import pytest

from plasmon_cascade.config import GeometryConfig, MaterialModel
from plasmon_cascade.errors import RegimeWarning
from plasmon_cascade.rates import (
    RateSet,
    coupling_strength,
    free_space_decay,
    larmor_radiative_decay,
    plasmon_linewidth,
    qd_decay_rate,
)
from plasmon_cascade.units import ATOMIC

EV = ATOMIC.ev_to_internal
MEV = ATOMIC.internal_to_mev


def test_free_space_decay_zero_dipole():
    assert free_space_decay(0.0, EV(2.8)) == 0.0


def test_free_space_decay_quadratic_in_dipole():
    d = 0.5 / ATOMIC.bohr_nm
    one = free_space_decay(d, EV(2.8))
    two = free_space_decay(2 * d, EV(2.8))
    assert two == pytest.approx(4 * one, rel=1e-14)


def test_free_space_decay_hand_value():
    # gamma0 = (4/3) omega^3 d^2 sqrt(eps_b) / c^3, evaluated by hand
    omega = 2.8 / 27.211386245988
    d = 0.5 / 0.052917721090380
    expected = 4.0 / 3.0 * omega**3 * d**2 / 137.036**3
    got = free_space_decay(d, EV(2.8), 1.0)
    assert got == pytest.approx(expected, rel=1e-13)
    # scale check: about 1.4 micro-eV in free space
    assert MEV(got) == pytest.approx(1.36e-3, rel=0.02)


def test_qd_decay_matches_free_space_for_matched_medium():
    mat = MaterialModel(eps_inf=1.0, omega_p=1e-30, gamma_landau=0.0, eps_b=1.0)
    geom = GeometryConfig.from_nm(7, 10, 0.5)
    got = qd_decay_rate(EV(2.8), geom, mat)
    expected = free_space_decay(geom.dipole, EV(2.8), 1.0)
    assert got == pytest.approx(expected, rel=1e-9)


def test_qd_decay_near_resonance_scale(reference_system):
    # paper anchor: about 0.5 meV within a factor of 2 at R=7, h=10
    gamma_mev = MEV(reference_system.rates.gamma_ex)
    assert 0.25 <= gamma_mev <= 1.0


def test_qd_decay_monotone_in_distance(config):
    values = []
    for h in (10, 12, 14, 16):
        cfg = config.with_geometry(distance_nm=h)
        omega = EV(2.6)
        values.append(qd_decay_rate(omega, cfg.geometry, cfg.material))
    assert all(a > b for a, b in zip(values, values[1:]))


def test_larmor_zero_radius():
    assert larmor_radiative_decay(EV(2.8), 0.0) == 0.0


def test_larmor_cubic_scaling():
    r7 = larmor_radiative_decay(EV(2.8), ATOMIC.nm_to_internal(7))
    r14 = larmor_radiative_decay(EV(2.8), ATOMIC.nm_to_internal(14))
    assert r14 == pytest.approx(8 * r7, rel=1e-12)


def test_larmor_hand_value():
    omega = 2.8 / 27.211386245988
    radius = 7.0 / 0.052917721090380
    expected = 2.0 * omega**4 * radius**3 / (137.036**3 * 3.0)
    got = larmor_radiative_decay(EV(2.8), ATOMIC.nm_to_internal(7), 1.0)
    assert got == pytest.approx(expected, rel=1e-13)
    assert MEV(got) == pytest.approx(1.80, rel=0.02)


def test_linewidth_reduces_to_landau():
    mat = MaterialModel()
    got = plasmon_linewidth(mat, EV(2.8), 0.0)
    assert MEV(got) == pytest.approx(51.0, rel=1e-12)


def test_linewidth_anchor(reference_system):
    # paper anchor: about 55 meV within 20% at R = 7 nm
    kappa_mev = MEV(reference_system.rates.kappa)
    assert 51.0 * 0.8 <= kappa_mev <= 55.0 * 1.2


def test_linewidth_additivity():
    mat = MaterialModel()
    omega = EV(2.8)
    r7, r14 = ATOMIC.nm_to_internal(7), ATOMIC.nm_to_internal(14)
    lhs = plasmon_linewidth(mat, omega, r14) - plasmon_linewidth(mat, omega, r7)
    rhs = larmor_radiative_decay(omega, r14, mat.eps_b) - larmor_radiative_decay(omega, r7, mat.eps_b)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_coupling_strength_trivials():
    assert coupling_strength(0.0, 1.0, 5.0) == 0.0
    kappa = 2.0
    assert coupling_strength(kappa, kappa, 1.0) == pytest.approx(kappa / 2, rel=1e-14)


def test_coupling_dominates_decay(config):
    from plasmon_cascade.figures import coupling_row

    for ratio in np.linspace(1.4, 4.0, 7):
        row = coupling_row(config, 7.0, 7.0 * ratio)
        assert row["g_mev"] > row["gamma_ex_mev"]


def test_coupling_monotone_and_radius_ordering(config):
    from plasmon_cascade.figures import coupling_row

    ratios = np.linspace(1.4, 3.0, 6)
    g7 = [coupling_row(config, 7.0, 7.0 * r)["g_mev"] for r in ratios]
    g14 = [coupling_row(config, 14.0, 14.0 * r)["g_mev"] for r in ratios]
    assert all(a > b for a, b in zip(g7, g7[1:]))
    assert all(a > b for a, b in zip(g14, g14[1:]))
    assert all(a > b for a, b in zip(g7, g14))


def test_weak_coupling_warning_fires():
    rates = RateSet(gamma_ex=1.0, gamma_bx=2.0, gamma0_ex=0.1, gamma_r=0.5,
                    kappa=2.0, g_ex_x=1.0, g_ex_y=1.0, g_bx_x=1.0, g_bx_y=1.0)
    with pytest.warns(RegimeWarning):
        msgs = rates.check_weak_coupling()
    assert msgs


def test_kappa_equal_between_channels(reference_system):
    assert reference_system.rates.kappa_x == reference_system.rates.kappa_y


def test_biexciton_rate_is_twice_exciton(reference_system):
    r = reference_system.rates
    assert r.gamma_bx == pytest.approx(2 * r.gamma_ex, rel=1e-14)


def test_bx_and_ex_couplings_equal(reference_system):
    r = reference_system.rates
    assert r.g_ex_x == r.g_bx_x
    assert r.g_ex_y == r.g_bx_y
