"""Decay rates and the weak-coupling emitter-plasmon coupling strength.

All formulas are evaluated in atomic units (4*pi*eps0 = 1, hbar = 1).
The coupling g = (1/2) sqrt(gamma0 * kappa * rho_zz/rho_0) holds in the
bad-cavity limit kappa >> g, gamma; a RegimeWarning flags parameter sets
that drift out of it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import GeometryConfig, MaterialModel
from .errors import RegimeWarning, ValidationError
from .greens import DEFAULT_N_MAX, scaled_ldos
from .units import ATOMIC


def free_space_decay(dipole: float, omega: float, eps_b: float = 1.0) -> float:
    """Free-space spontaneous decay rate of a dipole in a host of index sqrt(eps_b).

    gamma0 = omega^3 d^2 sqrt(eps_b) / (3 pi eps0 hbar c^3), which folds to
    (4/3) omega^3 d^2 sqrt(eps_b) / c^3 in atomic units.
    """
    if not omega > 0:
        raise ValidationError(f"omega must be positive, got {omega}")
    return 4.0 * omega**3 * dipole**2 * np.sqrt(eps_b) / (3.0 * ATOMIC.c**3)


def qd_decay_rate(omega: float, geometry: GeometryConfig, model: MaterialModel,
                  n_max: int = DEFAULT_N_MAX) -> float:
    """Emitter decay rate near the sphere: free-space rate times scaled LDOS."""
    gamma0 = free_space_decay(geometry.dipole, omega, model.eps_b)
    return gamma0 * float(scaled_ldos(omega, geometry, model, n_max))


def larmor_radiative_decay(omega0: float, radius: float, eps_b: float = 1.0) -> float:
    """Radiative loss rate of the sphere's dipole mode (classical Larmor form).

    gamma_r = 2 omega0^4 eps_b^2 R^3 / (c^3 (2 eps_b + 1)).
    """
    if radius < 0:
        raise ValidationError(f"radius must be non-negative, got {radius}")
    return 2.0 * omega0**4 * eps_b**2 * radius**3 / (ATOMIC.c**3 * (2.0 * eps_b + 1.0))


def plasmon_linewidth(model: MaterialModel, omega0: float, radius: float) -> float:
    """Total plasmon decay rate kappa = gamma_landau + gamma_r (frequency independent)."""
    return model.gamma_landau + larmor_radiative_decay(omega0, radius, model.eps_b)


def coupling_strength(gamma0: float, kappa: float, ldos_ratio: float) -> float:
    """Weak-coupling emitter-plasmon coupling g = (1/2) sqrt(gamma0 kappa rho/rho0)."""
    if gamma0 < 0 or kappa < 0 or ldos_ratio < 0:
        raise ValidationError("coupling_strength inputs must be non-negative")
    return 0.5 * np.sqrt(gamma0 * kappa * ldos_ratio)


@dataclass(frozen=True)
class RateSet:
    """All rates and couplings feeding the cascade amplitudes (atomic units)."""

    gamma_ex: float
    gamma_bx: float
    gamma0_ex: float
    gamma_r: float
    kappa: float
    g_ex_x: float
    g_ex_y: float
    g_bx_x: float
    g_bx_y: float

    def __post_init__(self):
        for name in ("gamma_ex", "gamma_bx", "gamma0_ex", "kappa",
                     "g_ex_x", "g_ex_y", "g_bx_x", "g_bx_y"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be non-negative")

    @property
    def kappa_x(self) -> float:
        return self.kappa

    @property
    def kappa_y(self) -> float:
        return self.kappa

    def check_weak_coupling(self) -> list[str]:
        """Warn when kappa fails to dominate the couplings and the QD decay."""
        gmax = max(self.g_ex_x, self.g_ex_y, self.g_bx_x, self.g_bx_y, self.gamma_ex)
        msgs = []
        if self.kappa < 5.0 * gmax:
            msg = (f"weak-coupling assumption marginal: kappa = "
                   f"{ATOMIC.internal_to_mev(self.kappa):.3g} meV < 5 * max(g, gamma_ex) = "
                   f"{ATOMIC.internal_to_mev(5 * gmax):.3g} meV")
            warnings.warn(msg, RegimeWarning, stacklevel=2)
            msgs.append(msg)
        return msgs
