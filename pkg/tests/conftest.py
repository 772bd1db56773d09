import math

import pytest

from eadyfronts import build_mode, default_params


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def mode(params):
    """Reference growing wave: k = 2, l = 0, eta = 0.01."""
    return build_mode(params, k=2.0, l=0.0, eta=0.01)


@pytest.fixture(scope="session")
def base_mode(params):
    """Unperturbed state (eta = 0) carried on the same wavevector."""
    return build_mode(params, k=2.0, l=0.0, eta=0.0)


@pytest.fixture(scope="session")
def oblique_mode(params):
    """Oblique wave with k = l and magnitude 2."""
    k = 2.0 / math.sqrt(2.0)
    return build_mode(params, k=k, l=k, eta=0.01)


@pytest.fixture(scope="session")
def omega_i():
    """Growth rate of the reference wave, 2/sqrt(e^4 - 1)."""
    return 2.0 / math.sqrt(math.exp(4.0) - 1.0)
