"""
Shared fixtures: the catalog masks, seeded random generators and random masks
with small rational entries.
"""
from fractions import Fraction

import numpy as np
import pytest

from hspy import hs_exact, hs_mask, hs_operator

seed = 14


def _random_rational(rng, size=6, max_den=8):
    return Fraction(int(rng.integers(-size, size + 1)), int(rng.integers(1, max_den + 1)))


@pytest.fixture
def rng():
    return np.random.default_rng(seed)


@pytest.fixture
def a1():
    return hs_mask.catalog("han05_a1")


@pytest.fixture
def a2():
    return hs_mask.catalog("han05_a2")


@pytest.fixture
def cubic():
    return hs_mask.catalog("hermite_cubic")


@pytest.fixture
def random_rational():
    return _random_rational


@pytest.fixture
def random_mask():

    def make(rng, d=None, max_len=4):
        d = d if d is not None else int(rng.integers(1, 3))
        length = int(rng.integers(1, max_len + 1))
        support_min = int(rng.integers(-3, 2))
        matrices = [hs_exact.rat_matrix([[_random_rational(rng) for _ in range(d + 1)] for _ in range(d + 1)])
                    for _ in range(length)]
        # keep the ends nonzero so the support is what we asked for
        matrices[0][0, 0] = Fraction(1)
        matrices[-1][d, d] = Fraction(1, 2)
        return hs_mask.Mask(d, support_min, matrices)

    return make


@pytest.fixture
def random_sequence():

    def make(rng, d, max_len=6):
        length = int(rng.integers(1, max_len + 1))
        offset = int(rng.integers(-4, 4))
        return hs_operator.HermiteSequence(d, offset, [[_random_rational(rng) for _ in range(d + 1)]
                                                       for _ in range(length)])

    return make
