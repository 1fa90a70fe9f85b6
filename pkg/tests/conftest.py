import numpy as np
import pytest


def random_complex(n, m=None, seed=0):
    rng = np.random.default_rng(seed)
    shape = (n, n if m is None else m)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
