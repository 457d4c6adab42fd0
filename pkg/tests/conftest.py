import pytest

from superder.derivations import derivation_space
from superder.superalg import catalog


@pytest.fixture(scope="session")
def S():
    return catalog("super-schrodinger")


@pytest.fixture(scope="session")
def der(S):
    return derivation_space(S)
