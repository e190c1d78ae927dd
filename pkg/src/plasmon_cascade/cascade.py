"""Steady-state two-photon amplitudes of the plasmon-assisted cascade.

The emitter starts in the doubly excited state and decays through one of
two orthogonally polarized channels, emitting a "biexciton" photon
(frequency axis omega_m, centered at omega0 - delta_xx) followed by an
"exciton" photon (axis omega_n, centered at omega0).  The long-time
amplitude density for channel a is

    c_a(m, n) = g_bx_a g_ex_a (kappa_a/pi) F_abar(s) N_a(m, n) / (D(s) Q_a(n))

with s = omega_m + omega_n, the channel factor F, the shared cascade
denominator D, the exciton-line factor Q and the two-path numerator N.
|c|^2 integrates over both axes to the two-photon emission probability.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import SingularityError, ValidationError

_DENOM_FLOOR = 1e-300


@dataclass(frozen=True)
class CascadeParams:
    """Energies, rates and couplings entering the amplitude formulas.

    All fields are in atomic units.  nu_x/nu_y are the (possibly complex)
    principal plasmon mode frequencies per polarization channel.
    """

    omega0: float
    delta_x: float
    delta_xx: float
    nu_x: complex
    nu_y: complex
    gamma_prime_u: float
    gamma_prime_x: float
    gamma_prime_y: float
    gamma_ex: float
    gamma_bx: float
    kappa_x: float
    kappa_y: float
    g_ex_x: float
    g_ex_y: float
    g_bx_x: float
    g_bx_y: float
    paper_literal_kappa: bool = False

    def __post_init__(self):
        # delta_x may be negative here: the channel-swap symmetry maps
        # delta_x -> -delta_x, and tests exercise that mapping directly.
        if not self.delta_xx > 0:
            raise ValidationError(f"delta_xx must be positive, got {self.delta_xx}")

    @property
    def omega_x(self) -> float:
        return self.omega0 + 0.5 * self.delta_x

    @property
    def omega_y(self) -> float:
        return self.omega0 - 0.5 * self.delta_x

    @property
    def omega_u(self) -> float:
        return 2.0 * self.omega0 - self.delta_xx

    # transition frequencies dressed with their dephasing rates
    @property
    def wt_x(self) -> complex:
        return self.omega_x - 1j * self.gamma_prime_x

    @property
    def wt_y(self) -> complex:
        return self.omega_y - 1j * self.gamma_prime_y

    @property
    def wt_u(self) -> complex:
        return self.omega_u - 1j * self.gamma_prime_u

    def channel(self, name: str) -> "_Channel":
        if name == "x":
            return _Channel("x", self.g_ex_x, self.g_bx_x, self.kappa_x,
                            self.nu_x, self.wt_x)
        if name == "y":
            return _Channel("y", self.g_ex_y, self.g_bx_y, self.kappa_y,
                            self.nu_y, self.wt_y)
        raise ValidationError(f"channel must be 'x' or 'y', got {name!r}")

    def swapped(self) -> "CascadeParams":
        """Parameters with the two polarization channels exchanged
        (delta_x flips sign so omega_x and omega_y trade places)."""
        return replace(
            self,
            delta_x=-self.delta_x,
            nu_x=self.nu_y, nu_y=self.nu_x,
            gamma_prime_x=self.gamma_prime_y, gamma_prime_y=self.gamma_prime_x,
            kappa_x=self.kappa_y, kappa_y=self.kappa_x,
            g_ex_x=self.g_ex_y, g_ex_y=self.g_ex_x,
            g_bx_x=self.g_bx_y, g_bx_y=self.g_bx_x,
        )


@dataclass(frozen=True)
class _Channel:
    name: str
    g_ex: float
    g_bx: float
    kappa: float
    nu: complex
    wt: complex


def _other(name: str) -> str:
    return "y" if name == "x" else "x"


def channel_factor(omega_m, omega_n, channel: str, params: CascadeParams):
    """Two-excitation factor F of one polarization channel.

    F = 2 g_ex^2 - (s - wt - nu + i(kappa + gamma_ex)) (s - 2 nu + 2 i kappa)
    with s = omega_m + omega_n.  With paper_literal_kappa the x-channel
    linewidth is used in both channels (the literal published form); the
    default uses each channel's own linewidth, which restores exact
    channel-swap symmetry.  Both agree whenever kappa_x = kappa_y.
    """
    ch = params.channel(channel)
    kappa = params.kappa_x if params.paper_literal_kappa else ch.kappa
    s = np.asarray(omega_m) + np.asarray(omega_n)
    return (2.0 * ch.g_ex**2
            - (s - ch.wt - ch.nu + 1j * (kappa + params.gamma_ex))
            * (s - 2.0 * ch.nu + 2j * kappa))


def cascade_denominator(omega_m, omega_n, params: CascadeParams):
    """Shared denominator D coupling the two decay channels."""
    s = np.asarray(omega_m) + np.asarray(omega_n)
    fx = channel_factor(omega_m, omega_n, "x", params)
    fy = channel_factor(omega_m, omega_n, "y", params)
    chx, chy = params.channel("x"), params.channel("y")
    d = ((s - params.wt_u + 1j * params.gamma_bx) * fx * fy
         + chx.g_bx**2 * fy * (s - 2.0 * chx.nu + 2j * chx.kappa)
         + chy.g_bx**2 * fx * (s - 2.0 * chy.nu + 2j * chy.kappa))
    if np.any(np.abs(d) < _DENOM_FLOOR):
        raise SingularityError("cascade denominator collapsed below 1e-300; "
                               "parameter set has an undamped resonance")
    return d


def exciton_line_factor(omega_n, channel: str, params: CascadeParams):
    """Hybridized exciton-photon resonance factor Q of one channel."""
    ch = params.channel(channel)
    wn = np.asarray(omega_n)
    return ((wn - ch.wt + 1j * params.gamma_ex)
            * (wn - ch.nu + 1j * ch.kappa) - ch.g_ex**2)


def two_photon_amplitude(omega_m, omega_n, channel: str, params: CascadeParams):
    """Long-time two-photon amplitude density c (units of inverse energy).

    The flat-reservoir couplings enter through |Omega|^2 = kappa/pi, one
    factor per emitted photon.
    """
    ch = params.channel(channel)
    wm = np.asarray(omega_m)
    wn = np.asarray(omega_n)
    f_opp = channel_factor(omega_m, omega_n, _other(channel), params)
    d = cascade_denominator(omega_m, omega_n, params)
    q = exciton_line_factor(omega_n, channel, params)
    if np.any(np.abs(q) < _DENOM_FLOOR):
        raise SingularityError("exciton line factor collapsed below 1e-300")
    numer = (wm + 3.0 * wn - 2.0 * ch.wt - 2.0 * ch.nu
             + 2j * ch.kappa + 2j * params.gamma_ex)
    coupling = ch.g_bx * ch.g_ex * ch.kappa / np.pi
    return coupling * f_opp * numer / (d * q)


def line_width_estimates(params: CascadeParams) -> tuple[float, float, float]:
    """Hybridized half widths (x line, y line, pair-sum ridge), for grid sizing."""
    widths = []
    for name in ("x", "y"):
        ch = params.channel(name)
        det2 = abs(ch.wt - ch.nu) ** 2
        widths.append(params.gamma_ex + abs(ch.wt.imag)
                      + ch.g_ex**2 * ch.kappa / (det2 + ch.kappa**2))
    ridge = (params.gamma_bx + params.gamma_prime_u
             + (params.g_bx_x**2 + params.g_bx_y**2) / max(params.kappa_x, 1e-300))
    return widths[0], widths[1], ridge


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform axes for the biexciton-photon (m) and exciton-photon (n) frequencies."""

    m_axis: np.ndarray
    n_axis: np.ndarray

    @property
    def dm(self) -> float:
        return float(self.m_axis[1] - self.m_axis[0])

    @property
    def dn(self) -> float:
        return float(self.n_axis[1] - self.n_axis[0])

    @classmethod
    def spanning(cls, params: CascadeParams, half_span: float = 0.0,
                 points: int = 401) -> "FrequencyGrid":
        """Default grid: centered on the two emission lines, wide enough to
        cover the plasmon-broadened structure (8 * max(kappa, delta_xx) when
        half_span is left at 0)."""
        if points < 201 or points % 2 == 0:
            raise ValidationError(f"points must be odd and >= 201, got {points}")
        kappa = max(params.kappa_x, params.kappa_y)
        if half_span <= 0.0:
            half_span = 8.0 * max(kappa, params.delta_xx)
        floor = max(6.0 * kappa, 6.0 * params.gamma_ex, 3.0 * params.delta_xx)
        if half_span < floor:
            raise ValidationError(
                f"half_span {half_span} below required {floor}")
        return cls.zoomed(params, half_span, points)

    @classmethod
    def zoomed(cls, params: CascadeParams, half_span: float, points: int) -> "FrequencyGrid":
        """Line-resolving grid with a caller-chosen span; same relative
        offsets on both axes so marginals share one omega - omega0 column."""
        if points < 3 or points % 2 == 0:
            raise ValidationError(f"points must be odd and >= 3, got {points}")
        offsets = np.linspace(-half_span, half_span, points)
        return cls(m_axis=params.omega0 - params.delta_xx + offsets,
                   n_axis=params.omega0 + offsets)


@dataclass(frozen=True)
class AmplitudeGrid:
    """Both channel amplitudes sampled on a frequency grid."""

    grid: FrequencyGrid
    c_x: np.ndarray
    c_y: np.ndarray
    params: CascadeParams

    def channel(self, name: str) -> np.ndarray:
        if name == "x":
            return self.c_x
        if name == "y":
            return self.c_y
        raise ValidationError(f"channel must be 'x' or 'y', got {name!r}")


def amplitude_grid(params: CascadeParams, grid: FrequencyGrid) -> AmplitudeGrid:
    """Dense evaluation of both channel amplitudes (rows: m, cols: n)."""
    wm, wn = np.meshgrid(grid.m_axis, grid.n_axis, indexing="ij")
    c_x = two_photon_amplitude(wm, wn, "x", params)
    c_y = two_photon_amplitude(wm, wn, "y", params)
    if not (np.all(np.isfinite(c_x)) and np.all(np.isfinite(c_y))):
        raise SingularityError("amplitude grid contains non-finite values")
    return AmplitudeGrid(grid=grid, c_x=c_x, c_y=c_y, params=params)
