"""
Shared fixtures for the pauli_cycles test suite.
"""

import numpy as np
import pytest

from configs.config import WorkbenchConfig
from pauli_cycles.realizations import Realization, construct_c2
from pauli_cycles.scenarios import cycle_graph


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def c4():
    """Faithful 2-qubit 4-cycle XI - IX - ZI - IZ."""
    return Realization.from_strings(cycle_graph(4), ["XI", "IX", "ZI", "IZ"])


@pytest.fixture
def c5():
    """Faithful 3-qubit 5-cycle from the C_{m+2} construction."""
    return construct_c2(3)


@pytest.fixture
def config(monkeypatch):
    for key in (
        "PAULI_THREADS",
        "PAULI_NODE_BUDGET",
        "PAULI_CANONICALIZE",
        "PAULI_TOLERANCE",
        "PAULI_EIGEN_TOLERANCE",
        "PAULI_PRECISION",
        "PAULI_SEED",
    ):
        monkeypatch.delenv(key, raising=False)
    return WorkbenchConfig()
