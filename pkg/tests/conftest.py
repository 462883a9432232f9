import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rel_l2(u, v):
    den = np.linalg.norm(v)
    if den == 0:
        return float(np.linalg.norm(u - v))
    return float(np.linalg.norm(np.asarray(u) - np.asarray(v)) / den)
