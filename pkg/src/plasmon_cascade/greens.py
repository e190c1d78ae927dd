"""Sphere-scattered Green's function and the scaled local density of states.

A z-oriented dipole at r_d = R + h outside a Drude sphere sees

    Im G_zz^scat = (k1/4pi) Re sum_n (2n+1) n(n+1) RV_n [h1_n(k1 r)/(k1 r)]^2

where RV_n is the per-multipole reflection coefficient.  The scaled LDOS
adds the free-space floor:  rho_zz/rho_0 = 1 + (6pi/k1) Im G_zz^scat, so
it tends to 1 far from the sphere and for an index-matched sphere.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import GeometryConfig, MaterialModel
from .errors import ConvergenceWarning, SingularityError, ValidationError
from .special import _SERIES_RADIUS, _jn_series, riccati_derivative, \
    spherical_bessel_j, spherical_hankel1


def _jn_order(n: int, z: np.ndarray) -> np.ndarray:
    """j_n on an array, series fast path for the small sphere arguments."""
    if np.all(np.abs(z) <= _SERIES_RADIUS):
        return _jn_series(n, z)
    return np.array([spherical_bessel_j(n, v) for v in z])

DEFAULT_N_MAX = 50
_TRUNCATION_TARGET = 1e-12
_TRUNCATION_WARN = 1e-6


@dataclass(frozen=True)
class WaveNumbers:
    """Host and metal wave numbers at a given frequency."""

    k1: complex
    k2: complex

    @classmethod
    def at(cls, omega: float, model: MaterialModel) -> "WaveNumbers":
        from .units import ATOMIC

        eps = model.permittivity(omega)
        # principal sqrt keeps Im sqrt(eps) >= 0 for an absorbing metal
        k1 = omega / ATOMIC.c * np.sqrt(complex(model.eps_b))
        k2 = omega / ATOMIC.c * np.sqrt(complex(eps))
        return cls(k1=k1, k2=k2)


@dataclass(frozen=True)
class PlasmonPeak:
    """One resonance of the scaled-LDOS curve."""

    center: float
    half_width: float
    height: float
    order: str  # "dipole" or "higher-order"


@dataclass(frozen=True)
class LdosCurve:
    """Scaled LDOS sampled on a frequency grid for one geometry."""

    frequencies: np.ndarray
    scaled_ldos: np.ndarray
    geometry: GeometryConfig
    material: MaterialModel

    def __post_init__(self):
        if not np.all(np.isfinite(self.scaled_ldos)):
            raise ValidationError("scaled LDOS contains non-finite values")

    def to_rows(self):
        from .units import ATOMIC

        return [(ATOMIC.internal_to_ev(w), v)
                for w, v in zip(self.frequencies, self.scaled_ldos)]


def mie_reflection_coeff(n: int, omega: float, model: MaterialModel, radius: float) -> complex:
    """Reflection coefficient RV_n of the sphere for one multipole order.

    Vanishes identically when the sphere is index-matched to the host.
    """
    if n < 1:
        raise ValidationError(f"multipole order must be >= 1, got {n}")
    if not omega > 0:
        raise ValidationError(f"omega must be positive, got {omega}")
    k = WaveNumbers.at(omega, model)
    z1 = k.k1 * radius
    z2 = k.k2 * radius
    j1 = spherical_bessel_j(n, z1)
    j2 = spherical_bessel_j(n, z2)
    h1 = spherical_hankel1(n, z1)
    dj1 = riccati_derivative(n, z1, "j")
    dj2 = riccati_derivative(n, z2, "j")
    dh1 = riccati_derivative(n, z1, "h1")
    num = k.k1**2 * j1 * dj2 - k.k2**2 * j2 * dj1
    den = k.k2**2 * j2 * dh1 - k.k1**2 * h1 * dj2
    if abs(den) < 1e-300:
        raise SingularityError(f"Mie denominator vanished at n={n}, omega={omega}")
    return num / den


def scattered_im_gzz(omega, geometry: GeometryConfig, model: MaterialModel,
                     n_max: int = DEFAULT_N_MAX):
    """Scattered part of Im G_zz at the emitter (units of inverse length).

    Multipole orders are evaluated one at a time and the series stops once
    the last term falls below 1e-12 of the running sum, or at n_max with a
    convergence warning.
    """
    from .units import ATOMIC

    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    if not geometry.emitter_radius > geometry.radius:
        raise ValidationError("emitter must sit outside the sphere (h > 0)")
    scalar = np.ndim(omega) == 0
    omega_arr = np.atleast_1d(np.asarray(omega, dtype=float))
    eps = model.permittivity(omega_arr)
    k1 = omega_arr / ATOMIC.c * np.sqrt(complex(model.eps_b))
    k2 = omega_arr / ATOMIC.c * np.sqrt(np.asarray(eps, dtype=complex))
    z1 = k1 * geometry.radius
    z2 = k2 * geometry.radius
    zr = k1 * geometry.emitter_radius

    # upward-recurrence state for the two Hankel stacks (order n-1, n)
    h1_prev = -1j * np.exp(1j * z1) / z1
    h1_curr = -np.exp(1j * z1) * (z1 + 1j) / z1**2
    hr_prev = -1j * np.exp(1j * zr) / zr
    hr_curr = -np.exp(1j * zr) * (zr + 1j) / zr**2
    j1_prev = _jn_order(0, z1)
    j2_prev = _jn_order(0, z2)

    total = np.zeros(omega_arr.shape, dtype=complex)
    converged = np.zeros(omega_arr.shape, dtype=bool)
    last_ratio = np.zeros(omega_arr.shape)
    for n in range(1, n_max + 1):
        j1_curr = _jn_order(n, z1)
        j2_curr = _jn_order(n, z2)
        dj1 = z1 * j1_prev - n * j1_curr
        dj2 = z2 * j2_prev - n * j2_curr
        dh1 = z1 * h1_prev - n * h1_curr
        num = k1**2 * j1_curr * dj2 - k2**2 * j2_curr * dj1
        den = k2**2 * j2_curr * dh1 - k1**2 * h1_curr * dj2
        term = (2 * n + 1) * n * (n + 1) * (num / den) * (hr_curr / zr) ** 2
        total = total + np.where(converged, 0.0, term)
        scale = np.abs(total) + 1e-300
        ratio = np.abs(term) / scale
        last_ratio = np.where(converged, last_ratio, ratio)
        converged |= ratio < _TRUNCATION_TARGET
        if np.all(converged):
            break
        # advance recurrences; guard against the Hankel growth at high order
        if np.max(np.abs(hr_curr)) > 1e140 or np.max(np.abs(h1_curr)) > 1e140:
            break
        h1_prev, h1_curr = h1_curr, (2 * n + 1) / z1 * h1_curr - h1_prev
        hr_prev, hr_curr = hr_curr, (2 * n + 1) / zr * hr_curr - hr_prev
        j1_prev = j1_curr
        j2_prev = j2_curr
    if not np.all(converged) and np.any(last_ratio > _TRUNCATION_WARN):
        warnings.warn(
            f"multipole series stopped at order {n} with last-term ratio "
            f"{last_ratio.max():.2e}", ConvergenceWarning, stacklevel=2)
    result = np.real(k1 / (4 * np.pi) * total)
    return float(result[0]) if scalar else result


def scaled_ldos(omega, geometry: GeometryConfig, model: MaterialModel,
                n_max: int = DEFAULT_N_MAX):
    """Total scaled LDOS rho_zz/rho_0 = 1 + (6pi/k1) Im G_zz^scat."""
    from .units import ATOMIC

    scat = scattered_im_gzz(omega, geometry, model, n_max)
    omega_arr = np.asarray(omega, dtype=float)
    k1 = omega_arr / ATOMIC.c * np.sqrt(model.eps_b)
    return 1.0 + 6 * np.pi / k1 * scat


def ldos_curve(geometry: GeometryConfig, model: MaterialModel,
               omega_min: float, omega_max: float, points: int,
               n_max: int = DEFAULT_N_MAX) -> LdosCurve:
    """Sample the scaled LDOS on a uniform frequency grid."""
    if points < 10:
        raise ValidationError(f"need at least 10 samples, got {points}")
    omega = np.linspace(omega_min, omega_max, points)
    values = scaled_ldos(omega, geometry, model, n_max)
    return LdosCurve(frequencies=omega, scaled_ldos=np.asarray(values),
                     geometry=geometry, material=model)


def _refine_peak(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Parabolic vertex through three samples around index i."""
    if i == 0 or i == len(x) - 1:
        return x[i], y[i]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2 * y1 + y2
    if denom == 0:
        return x[i], y[i]
    shift = 0.5 * (y0 - y2) / denom
    shift = float(np.clip(shift, -1.0, 1.0))
    dx = x[i + 1] - x[i]
    return x[i] + shift * dx, y1 - 0.25 * (y0 - y2) * shift


def _half_width(x: np.ndarray, y: np.ndarray, i: int, height: float) -> float:
    """Half width at half maximum from linear-interpolated crossings."""
    half = 0.5 * (height + 1.0)  # half way between peak and the unit floor
    left = None
    for k in range(i, 0, -1):
        if y[k - 1] <= half <= y[k]:
            frac = (half - y[k - 1]) / (y[k] - y[k - 1])
            left = x[k - 1] + frac * (x[k] - x[k - 1])
            break
    right = None
    for k in range(i, len(x) - 1):
        if y[k + 1] <= half <= y[k]:
            frac = (y[k] - half) / (y[k] - y[k + 1])
            right = x[k] + frac * (x[k + 1] - x[k])
            break
    if left is not None and right is not None:
        return 0.5 * (right - left)
    if right is not None:
        return right - x[i]
    if left is not None:
        return x[i] - left
    return x[-1] - x[0]


def find_plasmon_peaks(curve: LdosCurve, threshold: float = 1.5) -> list[PlasmonPeak]:
    """Locate resonances of a scaled-LDOS curve.

    Local maxima above ``threshold`` times the free-space floor of 1,
    sorted by center frequency.  The lowest peak is labeled the dipole
    mode; any further ones are higher-order.
    """
    x = np.asarray(curve.frequencies, dtype=float)
    y = np.asarray(curve.scaled_ldos, dtype=float)
    baseline = 1.0
    candidates = []
    for i in range(1, len(x) - 1):
        if y[i] >= y[i - 1] and y[i] > y[i + 1] and y[i] > threshold * baseline:
            center, height = _refine_peak(x, y, i)
            width = _half_width(x, y, i, y[i])
            candidates.append((center, width, height))
    candidates.sort(key=lambda c: c[0])
    peaks = []
    for rank, (center, width, height) in enumerate(candidates):
        order = "dipole" if rank == 0 else "higher-order"
        peaks.append(PlasmonPeak(center=center, half_width=width,
                                 height=height, order=order))
    return peaks
