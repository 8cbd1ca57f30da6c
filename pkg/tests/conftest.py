from __future__ import annotations

import math

import pytest

from mclab import vector_space


@pytest.fixture
def r2_d2():
    return vector_space(2, 2)


@pytest.fixture
def r3_d2():
    return vector_space(3, 2)


@pytest.fixture
def r3_dinf():
    return vector_space(3, math.inf)


@pytest.fixture
def r5_dinf_exact():
    return vector_space(5, math.inf, exact=True)


@pytest.fixture
def r4_d1_exact():
    return vector_space(4, 1, exact=True)


@pytest.fixture
def r5_d1_exact():
    return vector_space(5, 1, exact=True)
