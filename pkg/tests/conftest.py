import numpy as np
import pytest

from qrframes import cyclic_group, dihedral_group, symmetric_group


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def d4():
    return dihedral_group(4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
