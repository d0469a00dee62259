import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC1BC)


def random_word(rng, n, sigma):
    return rng.integers(0, sigma, size=n, dtype=np.int32)
