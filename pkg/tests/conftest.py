import warnings

import numpy as np
import pytest

from plasmon_cascade import CascadeParams, build_system, default_config
from plasmon_cascade.pipeline import SystemModel


@pytest.fixture(scope="session")
def config():
    return default_config()


@pytest.fixture(scope="session")
def reference_system(config) -> SystemModel:
    """Fully resolved model for the default geometry (R = 7 nm, h = 10 nm)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_system(config)


@pytest.fixture(scope="session")
def fig4a_params(reference_system) -> CascadeParams:
    return reference_system.params


def make_params(
    omega0=0.1,
    delta_x=4e-6,
    delta_xx=4e-5,
    gamma_ex=2e-5,
    kappa=2e-3,
    g=1.2e-4,
    detuning_x=(4e-5 - 4e-7j),
    detuning_y=(-8e-5 + 4e-7j),
    dephasing=4e-8,
    **overrides,
):
    """Hand-built parameter set at desk scale (atomic units)."""
    fields = dict(
        omega0=omega0,
        delta_x=delta_x,
        delta_xx=delta_xx,
        nu_x=(omega0 + 0.5 * delta_x - 1j * dephasing) - detuning_x,
        nu_y=(omega0 - 0.5 * delta_x - 1j * dephasing) - detuning_y,
        gamma_prime_u=dephasing,
        gamma_prime_x=dephasing,
        gamma_prime_y=dephasing,
        gamma_ex=gamma_ex,
        gamma_bx=2.0 * gamma_ex,
        kappa_x=kappa,
        kappa_y=kappa,
        g_ex_x=g,
        g_ex_y=g,
        g_bx_x=g,
        g_bx_y=g,
    )
    fields.update(overrides)
    return CascadeParams(**fields)


@pytest.fixture
def desk_params():
    return make_params()


@pytest.fixture
def symmetric_params():
    """Channels made identical: delta_x = 0 and mirrored detunings."""
    return make_params(delta_x=0.0, detuning_x=(4e-5 - 4e-7j),
                       detuning_y=(4e-5 - 4e-7j))


def assert_close(a, b, rtol=1e-12, atol=0.0):
    np.testing.assert_allclose(a, b, rtol=rtol, atol=atol)
