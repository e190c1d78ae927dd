"""Entangled-photon-pair generation from an emitter cascade near a metal nanoparticle."""

__version__ = "0.1.0"

from .cascade import (
    AmplitudeGrid,
    CascadeParams,
    FrequencyGrid,
    amplitude_grid,
    cascade_denominator,
    channel_factor,
    two_photon_amplitude,
)
from .config import (
    CascadeInputs,
    GeometryConfig,
    MaterialModel,
    SimulationConfig,
    default_config,
    load_config,
)
from .entanglement import (
    FilteredEntanglement,
    PolarizationDensityMatrix,
    SpectralWindow,
    filtered_integrals,
    refined_filtered_integrals,
    window_value,
    wootters_concurrence,
)
from .greens import (
    LdosCurve,
    PlasmonPeak,
    WaveNumbers,
    find_plasmon_peaks,
    ldos_curve,
    mie_reflection_coeff,
    scaled_ldos,
    scattered_im_gzz,
)
from .pipeline import SystemModel, build_system
from .rates import (
    RateSet,
    coupling_strength,
    free_space_decay,
    larmor_radiative_decay,
    plasmon_linewidth,
    qd_decay_rate,
)
from .spectra import SpectrumCurve, fwhm, joint_spectrum, marginal_spectrum
from .units import ATOMIC, UnitSystem

__all__ = [
    "ATOMIC",
    "AmplitudeGrid",
    "CascadeInputs",
    "CascadeParams",
    "FilteredEntanglement",
    "FrequencyGrid",
    "GeometryConfig",
    "LdosCurve",
    "MaterialModel",
    "PlasmonPeak",
    "PolarizationDensityMatrix",
    "RateSet",
    "SimulationConfig",
    "SpectralWindow",
    "SpectrumCurve",
    "SystemModel",
    "UnitSystem",
    "WaveNumbers",
    "amplitude_grid",
    "build_system",
    "cascade_denominator",
    "channel_factor",
    "coupling_strength",
    "default_config",
    "filtered_integrals",
    "find_plasmon_peaks",
    "free_space_decay",
    "fwhm",
    "joint_spectrum",
    "larmor_radiative_decay",
    "ldos_curve",
    "load_config",
    "marginal_spectrum",
    "mie_reflection_coeff",
    "plasmon_linewidth",
    "qd_decay_rate",
    "refined_filtered_integrals",
    "scaled_ldos",
    "scattered_im_gzz",
    "two_photon_amplitude",
    "window_value",
    "wootters_concurrence",
]
