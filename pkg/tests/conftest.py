"""Shared fixtures: deterministic groups and homomorphic keys.

Key generation is the slow part, so anything reusable is session-scoped.
The 512-bit group uses the pinned modulus; only the discrete log a is drawn
from the fixed seed, so every test session sees the same parameters.
"""

import pytest

from otkit.groupmath import gen_group, toy_group
from otkit.paillier import kgen
from otkit.rng import SeededSource


@pytest.fixture
def rng():
    return SeededSource(2024)


@pytest.fixture(scope="session")
def toy():
    return toy_group()


@pytest.fixture(scope="session")
def toy_dbg():
    return toy_group(retain_dlog=True)


@pytest.fixture(scope="session")
def group512():
    return gen_group(512, SeededSource(512), retain_dlog=True)


@pytest.fixture(scope="session")
def paillier512():
    return kgen(512, SeededSource(71))


@pytest.fixture(scope="session")
def paillier640():
    # wide enough to embed 513-bit group elements with slack
    return kgen(640, SeededSource(72))


@pytest.fixture(scope="session")
def paillier1024():
    return kgen(1024, SeededSource(73))
