"""Time-domain oracle: discretized reservoirs integrated with fixed-step RK4.

The two plasmon reservoirs are sampled on uniform frequency combs and the
coupled amplitude equations of the cascade are integrated directly, with
no use of the closed-form steady-state solution.  Emitted-pair amplitudes
are accumulated as driven Fourier integrals of the one-plasmon-one-photon
amplitudes, so a probe at bath frequencies (omega_m, omega_n) converges to
the same quantity as the analytic amplitude density times the mode spacing.

This module deliberately shares nothing with the analytic engine except
the CascadeParams container; it is the independence guarantee behind the
cross checks.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cascade import CascadeParams
from .errors import NumericalError, RegimeWarning, ValidationError

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class DiscretizedBath:
    """Uniform frequency combs standing in for the two plasmon reservoirs."""

    freqs_x: np.ndarray
    freqs_y: np.ndarray
    spacing: float
    coupling_x: float
    coupling_y: float
    span: float

    @property
    def n_modes(self) -> int:
        return len(self.freqs_x)

    def freqs(self, channel: str) -> np.ndarray:
        return self.freqs_x if channel == "x" else self.freqs_y

    def coupling(self, channel: str) -> float:
        return self.coupling_x if channel == "x" else self.coupling_y


def build_bath(params: CascadeParams, n_modes: int, span: float = 0.0) -> DiscretizedBath:
    """Discretize both reservoirs: N modes across +-span around each mode center.

    The per-mode coupling satisfies pi * Omega^2 / dw = kappa exactly.
    """
    if n_modes < 100:
        raise ValidationError(f"need at least 100 bath modes, got {n_modes}")
    kappa_max = max(params.kappa_x, params.kappa_y)
    if span <= 0.0:
        span = 10.0 * kappa_max
    if span < 10.0 * kappa_max - 1e-15:
        raise ValidationError(
            f"bath span {span} is below 10*kappa = {10 * kappa_max}")
    spacing = 2.0 * span / (n_modes - 1)
    center_x = float(np.real(params.nu_x))
    center_y = float(np.real(params.nu_y))
    freqs_x = center_x + np.linspace(-span, span, n_modes)
    freqs_y = center_y + np.linspace(-span, span, n_modes)
    coupling_x = np.sqrt(params.kappa_x * spacing / np.pi)
    coupling_y = np.sqrt(params.kappa_y * spacing / np.pi)
    return DiscretizedBath(freqs_x=freqs_x, freqs_y=freqs_y, spacing=spacing,
                           coupling_x=coupling_x, coupling_y=coupling_y,
                           span=span)


@dataclass
class AmplitudeState:
    """Amplitudes of the truncated cascade hierarchy at one instant.

    c4/c5 rows are the x and y channels.  Pair amplitudes are tracked at
    the requested probe points only; their total weight is accumulated
    through the loss channel of the one-plasmon-one-photon amplitudes.
    """

    c1: complex
    c2: np.ndarray            # shape (2,)
    c3: np.ndarray            # shape (2,)
    c4: np.ndarray            # shape (2, N)
    c5: np.ndarray            # shape (2, N)
    time: float
    probe_values: dict = field(default_factory=dict)
    pair_norm: float = 0.0
    leak_norm: float = 0.0

    def tracked_norm(self) -> float:
        return float(abs(self.c1) ** 2 + np.sum(np.abs(self.c2) ** 2)
                     + np.sum(np.abs(self.c3) ** 2)
                     + np.sum(np.abs(self.c4) ** 2)
                     + np.sum(np.abs(self.c5) ** 2))

    def norm_budget(self) -> dict:
        return {
            "tracked": self.tracked_norm(),
            "pairs": self.pair_norm,
            "leaked": self.leak_norm,
            "total": self.tracked_norm() + self.pair_norm + self.leak_norm,
        }


def initial_state(bath: DiscretizedBath) -> AmplitudeState:
    n = bath.n_modes
    return AmplitudeState(
        c1=1.0 + 0.0j,
        c2=np.zeros(2, dtype=complex),
        c3=np.zeros(2, dtype=complex),
        c4=np.zeros((2, n), dtype=complex),
        c5=np.zeros((2, n), dtype=complex),
        time=0.0,
    )


def default_dt(params: CascadeParams) -> float:
    scale = max(params.kappa_x, params.kappa_y,
                params.g_ex_x, params.g_ex_y, params.g_bx_x, params.g_bx_y,
                abs(params.wt_x - params.nu_x), abs(params.wt_y - params.nu_y),
                params.gamma_bx, 1e-300)
    return 0.05 / scale


def default_t_final(params: CascadeParams) -> float:
    if params.gamma_ex <= 0:
        raise ValidationError("t_final default needs gamma_ex > 0")
    return 20.0 / params.gamma_ex


class _System:
    """Right-hand side of the rotating-frame amplitude hierarchy."""

    def __init__(self, params: CascadeParams, bath: DiscretizedBath,
                 probes, c2_damping: str):
        if c2_damping not in ("printed", "exciton"):
            raise ValidationError(
                f"c2_damping must be 'printed' or 'exciton', got {c2_damping!r}")
        ref = 2.0 * params.omega0
        gamma2 = params.gamma_bx if c2_damping == "printed" else params.gamma_ex
        chans = [params.channel("x"), params.channel("y")]
        self.e1 = params.wt_u - ref - 1j * params.gamma_bx
        self.e2 = np.array([ch.wt + ch.nu - ref - 1j * (ch.kappa + gamma2)
                            for ch in chans])
        self.e3 = np.array([2.0 * ch.nu - ref - 2j * ch.kappa for ch in chans])
        self.g_bx = np.array([ch.g_bx for ch in chans])
        self.g_ex = np.array([ch.g_ex for ch in chans])
        self.kappas = np.array([ch.kappa for ch in chans])
        self.omega = np.vstack([bath.freqs_x, bath.freqs_y])
        self.Om = np.array([bath.coupling_x, bath.coupling_y])
        self.e4 = np.array([ch.wt - ref - 1j * params.gamma_ex + self.omega[i]
                            for i, ch in enumerate(chans)])
        self.e5 = np.array([ch.nu - ref - 1j * ch.kappa + self.omega[i]
                            for i, ch in enumerate(chans)])
        # probes: (channel_index, m_index, pair_detuning)
        self.probes = []
        for channel, i_m, i_n in probes:
            ci = 0 if channel == "x" else 1
            phi = self.omega[ci, i_m] + self.omega[ci, i_n] - ref
            self.probes.append((ci, i_m, phi))
        self.pr_chan = np.array([p[0] for p in self.probes], dtype=int)
        self.pr_m = np.array([p[1] for p in self.probes], dtype=int)
        self.pr_phi = np.array([p[2] for p in self.probes], dtype=float)

    def rhs(self, t, c1, c2, c3, c4, c5):
        d1 = -1j * (self.e1 * c1 + np.dot(self.g_bx, c2))
        d2 = -1j * (self.e2 * c2 + self.g_bx * c1 + _SQRT2 * self.g_ex * c3)
        d3 = -1j * (self.e3 * c3 + _SQRT2 * self.g_ex * c2)
        d4 = -1j * (self.e4 * c4 + (self.Om * c2)[:, None] + self.g_ex[:, None] * c5)
        d5 = -1j * (self.e5 * c5 + self.g_ex[:, None] * c4
                    + (_SQRT2 * self.Om * c3)[:, None])
        if len(self.probes):
            src = c5[self.pr_chan, self.pr_m]
            dpr = -1j * self.Om[self.pr_chan] * src * np.exp(1j * self.pr_phi * t)
        else:
            dpr = np.zeros(0, dtype=complex)
        dpair = 2.0 * np.dot(self.kappas, np.sum(np.abs(c5) ** 2, axis=1))
        dleak = (2.0 * (params_leak_rate(self.e1)) * abs(c1) ** 2
                 + 2.0 * np.dot(np.maximum(-np.imag(self.e2) - self.kappas, 0.0),
                                np.abs(c2) ** 2)
                 + 2.0 * np.sum(np.maximum(-np.imag(self.e4), 0.0) * np.abs(c4) ** 2))
        return d1, d2, d3, d4, d5, dpr, dpair, dleak


def params_leak_rate(energy: complex) -> float:
    return max(-float(np.imag(energy)), 0.0)


def integrate(params: CascadeParams, bath: DiscretizedBath,
              t_final: float, dt: float, probes=(),
              c2_damping: str = "printed",
              state: AmplitudeState | None = None) -> AmplitudeState:
    """Fixed-step RK4 integration of the discretized hierarchy.

    probes are (channel, m_index, n_index) triples on the bath combs; the
    returned state carries the accumulated pair amplitude for each.
    """
    if dt <= 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    dt_max = default_dt(params)
    if dt > dt_max * (1 + 1e-9):
        raise ValidationError(
            f"dt = {dt} exceeds the resolution bound {dt_max}")
    if params.gamma_ex > 0 and t_final < 20.0 / params.gamma_ex:
        warnings.warn("t_final is below 20/gamma_ex; steady state may not be "
                      "reached", RegimeWarning, stacklevel=2)

    sys_ = _System(params, bath, probes, c2_damping)
    st = state or initial_state(bath)
    c1, c2, c3 = complex(st.c1), st.c2.copy(), st.c3.copy()
    c4, c5 = st.c4.copy(), st.c5.copy()
    pr = np.zeros(len(sys_.probes), dtype=complex)
    pair = st.pair_norm
    leak = st.leak_norm

    n_steps = int(np.ceil((t_final - st.time) / dt))
    t = st.time
    check_every = max(1, n_steps // 200)
    for step in range(n_steps):
        h = min(dt, t_final - t)
        k1 = sys_.rhs(t, c1, c2, c3, c4, c5)
        k2 = sys_.rhs(t + 0.5 * h,
                      c1 + 0.5 * h * k1[0], c2 + 0.5 * h * k1[1],
                      c3 + 0.5 * h * k1[2], c4 + 0.5 * h * k1[3],
                      c5 + 0.5 * h * k1[4])
        k3 = sys_.rhs(t + 0.5 * h,
                      c1 + 0.5 * h * k2[0], c2 + 0.5 * h * k2[1],
                      c3 + 0.5 * h * k2[2], c4 + 0.5 * h * k2[3],
                      c5 + 0.5 * h * k2[4])
        k4 = sys_.rhs(t + h,
                      c1 + h * k3[0], c2 + h * k3[1], c3 + h * k3[2],
                      c4 + h * k3[3], c5 + h * k3[4])
        w = h / 6.0
        c1 = c1 + w * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        c2 = c2 + w * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        c3 = c3 + w * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        c4 = c4 + w * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
        c5 = c5 + w * (k1[4] + 2 * k2[4] + 2 * k3[4] + k4[4])
        pr = pr + w * (k1[5] + 2 * k2[5] + 2 * k3[5] + k4[5])
        pair = pair + w * (k1[6] + 2 * k2[6] + 2 * k3[6] + k4[6])
        leak = leak + w * (k1[7] + 2 * k2[7] + 2 * k3[7] + k4[7])
        t += h
        if step % check_every == 0:
            tracked = (abs(c1) ** 2 + np.sum(np.abs(c2) ** 2)
                       + np.sum(np.abs(c3) ** 2) + np.sum(np.abs(c4) ** 2)
                       + np.sum(np.abs(c5) ** 2))
            if tracked > 1.01:
                raise NumericalError(
                    f"norm blow-up at t={t:.3g}: tracked norm = {tracked:.4f}")

    probe_values = {probe: complex(value) for probe, value in zip(probes, pr)}
    return AmplitudeState(c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, time=t,
                          probe_values=probe_values, pair_norm=float(pair),
                          leak_norm=float(leak))


@dataclass(frozen=True)
class OracleReport:
    """Per-probe comparison of the oracle against the analytic amplitudes."""

    probes: list
    oracle: list
    analytic: list
    rel_errors: list
    mean_error: float
    max_error: float
    c2_damping: str
    n_modes: int
    dt: float
    t_final: float

    def to_dict(self) -> dict:
        return {
            "mean_relative_error": self.mean_error,
            "max_relative_error": self.max_error,
            "n_probes": len(self.probes),
            "c2_damping": self.c2_damping,
            "n_modes": self.n_modes,
            "dt": self.dt,
            "t_final": self.t_final,
            "probes": [
                {"channel": p[0], "m_index": int(p[1]), "n_index": int(p[2]),
                 "oracle": o, "analytic": a, "rel_error": e}
                for p, o, a, e in zip(self.probes, self.oracle,
                                      self.analytic, self.rel_errors)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def compare_to_analytic(final: AmplitudeState, bath: DiscretizedBath,
                        params: CascadeParams, c2_damping: str = "printed",
                        dt: float = 0.0, t_final: float = 0.0) -> OracleReport:
    """Relative errors of |C_mn|^2 against |c_mn|^2 (dw)^2 at the probes."""
    from .cascade import two_photon_amplitude

    if not final.probe_values:
        raise ValidationError("state carries no probe amplitudes to compare")
    probes, oracle, analytic, errors = [], [], [], []
    for (channel, i_m, i_n), value in final.probe_values.items():
        w_m = bath.freqs(channel)[i_m]
        w_n = bath.freqs(channel)[i_n]
        a = abs(two_photon_amplitude(w_m, w_n, channel, params)) ** 2 * bath.spacing**2
        o = abs(value) ** 2
        probes.append((channel, i_m, i_n))
        oracle.append(float(o))
        analytic.append(float(a))
        errors.append(abs(o - a) / a if a > 0 else float(o > 0))
    return OracleReport(
        probes=probes, oracle=oracle, analytic=analytic, rel_errors=errors,
        mean_error=float(np.mean(errors)), max_error=float(np.max(errors)),
        c2_damping=c2_damping, n_modes=bath.n_modes, dt=dt, t_final=t_final)


def default_probes(params: CascadeParams, bath: DiscretizedBath,
                   offsets_m=None, offsets_n=None) -> list:
    """A probe lattice within ~2 kappa of the two emission lines (x channel
    offsets mirrored onto y), mapped to nearest bath modes."""
    kappa = max(params.kappa_x, params.kappa_y)
    if offsets_m is None:
        offsets_m = np.array([-1.5, -0.6, 0.0, 0.6, 1.5]) * kappa
    if offsets_n is None:
        offsets_n = np.array([-1.2, -0.5, 0.0, 0.5, 1.2]) * kappa
    probes = []
    for channel in ("x", "y"):
        freqs = bath.freqs(channel)
        ch = params.channel(channel)
        center_n = float(np.real(ch.wt))
        center_m = params.omega_u - center_n
        for dm in offsets_m:
            i_m = int(np.argmin(np.abs(freqs - (center_m + dm))))
            for dn in offsets_n:
                i_n = int(np.argmin(np.abs(freqs - (center_n + dn))))
                probes.append((channel, i_m, i_n))
    # drop duplicates while keeping deterministic order
    seen, unique = set(), []
    for p in probes:
        if p not in seen:
            seen.add(p)
            unique.append(p)
    return unique
