"""Shared fixtures: the worked-example fields and characters"""

import numpy as np
import pytest

from gausssum.services.ff_arith import make_field
from gausssum.services.char_theory import MultChar


@pytest.fixture
def f5():
    return make_field(5)


@pytest.fixture
def chi_f5(f5):
    """chi(2) = i over F_5 with generator 2"""
    return MultChar(f5, 1)


@pytest.fixture
def f241():
    return make_field(241, generator=7)


@pytest.fixture
def chi_f241(f241):
    return MultChar(f241, 10)


@pytest.fixture
def f9():
    return make_field(3, 2)


@pytest.fixture
def f4():
    return make_field(2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

