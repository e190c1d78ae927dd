import mpmath
import numpy as np
import pytest
from scipy import special as sp

from _reference import bessel_j_series
from plasmon_cascade.errors import NumericalError, ValidationError
from plasmon_cascade.special import (
    riccati_derivative,
    spherical_bessel_j,
    spherical_bessel_y,
    spherical_h1_all,
    spherical_hankel1,
    spherical_jn_all,
)


def mp_spherical_jn(n, z):
    z = mpmath.mpc(z)
    return complex(mpmath.sqrt(mpmath.pi / (2 * z)) * mpmath.besselj(n + 0.5, z))


def mp_spherical_yn(n, z):
    z = mpmath.mpc(z)
    return complex(mpmath.sqrt(mpmath.pi / (2 * z)) * mpmath.bessely(n + 0.5, z))


def test_j0_closed_form():
    assert spherical_bessel_j(0, 1.0) == pytest.approx(np.sin(1.0) / 1.0, rel=1e-14)


def test_j1_limit_at_zero():
    assert spherical_bessel_j(1, 0.0) == 0.0
    assert spherical_bessel_j(0, 0.0) == 1.0
    assert abs(spherical_bessel_j(1, 1e-8)) < 1e-8


def test_j5_complex_against_series_oracle():
    z = 2 + 0.5j
    expected = bessel_j_series(5, z, terms=30)
    assert spherical_bessel_j(5, z) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 25, 50])
@pytest.mark.parametrize("z", [0.05, 0.3, 1.7, 3.9, 7.3, 22.0, 49.0])
def test_jn_real_against_scipy(n, z):
    assert spherical_bessel_j(n, z) == pytest.approx(
        sp.spherical_jn(n, z), rel=1e-10, abs=1e-280)


@pytest.mark.parametrize("z", [0.2 + 0.1j, 1.5 - 0.8j, 4 + 1j, 10 + 3j, 30 - 2j])
@pytest.mark.parametrize("n", [0, 2, 7, 20])
def test_jn_complex_against_mpmath(n, z):
    expected = mp_spherical_jn(n, z)
    got = spherical_bessel_j(n, z)
    assert got == pytest.approx(expected, rel=1e-10, abs=1e-280)


@pytest.mark.parametrize("z", [0.4, 2.2, 9.0, 0.5 + 0.2j, 3 + 1j])
@pytest.mark.parametrize("n", [0, 1, 4, 12])
def test_yn_against_mpmath(n, z):
    expected = mp_spherical_yn(n, z)
    assert spherical_bessel_y(n, z) == pytest.approx(expected, rel=1e-10)


def test_h0_closed_form():
    z = 1.0
    expected = -1j * np.exp(1j * z) / z
    assert spherical_hankel1(0, z) == pytest.approx(expected, rel=1e-14)
    # real/imag parts quoted to 4 digits
    assert spherical_hankel1(0, 1.0).real == pytest.approx(0.8415, abs=1e-4)
    assert spherical_hankel1(0, 1.0).imag == pytest.approx(-0.5403, abs=1e-4)


def test_h1_closed_form():
    z = 1.0
    expected = -np.exp(1j * z) * (z + 1j) / z**2
    assert spherical_hankel1(1, z) == pytest.approx(expected, rel=1e-14)


def test_hankel_is_j_plus_iy():
    for n in (0, 1, 3, 8):
        for z in (0.7, 2.4, 6.0):
            expected = sp.spherical_jn(n, z) + 1j * sp.spherical_yn(n, z)
            assert spherical_hankel1(n, z) == pytest.approx(expected, rel=1e-10)


def test_hankel_rejects_zero():
    with pytest.raises(ValidationError):
        spherical_hankel1(2, 0.0)


def test_wronskian_identity():
    # j_n y'_n - j'_n y_n = 1/x^2 with f'_n = f_{n-1} - (n+1)/x f_n
    x, n = 3.0, 2
    j = [sp.spherical_jn(k, x) for k in range(n + 2)]
    jn = spherical_bessel_j(n, x)
    jn1 = spherical_bessel_j(n - 1, x)
    yn = spherical_bessel_y(n, x)
    yn1 = spherical_bessel_y(n - 1, x)
    jp = jn1 - (n + 1) / x * jn
    yp = yn1 - (n + 1) / x * yn
    assert jn * yp - jp * yn == pytest.approx(1.0 / x**2, rel=1e-10)


def test_riccati_j_n0_closed_form():
    assert riccati_derivative(0, 2.0, "j") == pytest.approx(np.cos(2.0), rel=1e-14)
    assert riccati_derivative(0, 2.0, "j") == pytest.approx(-0.41615, abs=1e-5)


def test_riccati_j_n1_limit():
    assert abs(riccati_derivative(1, 1e-9, "j")) < 1e-8
    assert riccati_derivative(1, 0.0, "j") == 0.0


def test_riccati_h1_against_finite_difference():
    n, z, step = 3, 4 + 1j, 1e-5
    fd = ((z + step) * spherical_hankel1(n, z + step)
          - (z - step) * spherical_hankel1(n, z - step)) / (2 * step)
    got = riccati_derivative(n, z, "h1")
    assert abs(got - fd) / abs(fd) < 1e-6


def test_riccati_rejects_bad_kind():
    with pytest.raises(ValidationError):
        riccati_derivative(1, 1.0, "y")


def test_overflow_reported():
    with pytest.raises(NumericalError):
        spherical_bessel_j(2, 1e4j)


def test_jn_all_matches_single_calls():
    z = np.array([0.1, 0.5 + 0.2j, 2.0, 3.5 - 1j])
    stack = spherical_jn_all(6, z)
    for n in range(7):
        expected = np.array([spherical_bessel_j(n, v) for v in z])
        np.testing.assert_allclose(stack[n], expected, rtol=1e-12)


def test_h1_all_matches_single_calls():
    z = np.array([0.3, 1.1, 2.5])
    stack = spherical_h1_all(5, z)
    for n in range(6):
        expected = np.array([spherical_hankel1(n, v) for v in z])
        np.testing.assert_allclose(stack[n], expected, rtol=1e-11)
