import math

import numpy as np
import pytest

from cascade_rabi.utils import coherent_grid, quantized_grid, semiclassical_grid


@pytest.fixture
def rng():
    return np.random.default_rng(20230817)


@pytest.fixture
def resonance_grid():
    return semiclassical_grid(kappa=1.0)


@pytest.fixture
def sector_grid():
    return quantized_grid(g=1.0)


@pytest.fixture(scope="session")
def revival_grid():
    return coherent_grid(nbar=48.0, g=1.0)


def random_state(rng, size=4):
    c = rng.normal(size=size) + 1j * rng.normal(size=size)
    return c / np.linalg.norm(c)


def random_hermitian(rng, size=4, scale=1.0):
    a = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return scale * (a + a.conj().T) / 2


HALF_PI = math.pi / 2
