# Shared pytest fixtures; keeps the repository root importable

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_density(rng, d, rank=None):
    # Random density matrix of dimension d and given rank
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_ket(rng, d):
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return psi / np.linalg.norm(psi)
