import numpy as np
import pytest

from spinorbit import PhotonState, Spin, SpinOrbitMode

SPINS = (Spin.L, Spin.R)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_photon_state(rng, m_max=8, max_terms=6):
    """Random normalized circular-basis state with a small sparse support."""
    n_terms = int(rng.integers(1, max_terms + 1))
    amps = {}
    while len(amps) < n_terms:
        mode = SpinOrbitMode(SPINS[rng.integers(0, 2)], int(rng.integers(-m_max, m_max + 1)))
        amps[mode] = complex(rng.normal(), rng.normal())
    return PhotonState(amps, m_max).normalize()
