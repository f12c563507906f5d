import pytest

import subconverge as sc


@pytest.fixture(scope="session")
def sp3_k3():
    eq, bound = sc.make_sp3(3)
    return eq, bound


@pytest.fixture(scope="session")
def sp3_k3_traj(sp3_k3):
    eq, _ = sp3_k3
    return sc.iterate(eq, (1.0, 1.0, 1.0), 450)


@pytest.fixture(scope="session")
def sp3_k2():
    eq, bound = sc.make_sp3(2)
    return eq, bound


@pytest.fixture(scope="session")
def sp3_k1():
    eq, bound = sc.make_sp3(1)
    return eq, bound


@pytest.fixture(scope="session")
def adult_juvenile():
    return sc.make_adult_juvenile(0.8, 1.0, 2.0, 2.0)
