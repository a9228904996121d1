import math

import numpy as np
import pytest

from qudit_epi.states import make_density


@pytest.fixture
def bell():
    """The maximally entangled two-qubit state on (X, E)."""
    v = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    return make_density(np.outer(v, v.conj()))


@pytest.fixture
def plus():
    return make_density(np.full((2, 2), 0.5, dtype=complex))


@pytest.fixture
def zero():
    return make_density(np.diag([1.0, 0.0]).astype(complex))
