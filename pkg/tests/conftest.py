import pytest

from vaikit import catalog


@pytest.fixture(scope="session")
def sl2():
    return catalog.sl(2)


@pytest.fixture(scope="session")
def sl3():
    return catalog.sl(3)


@pytest.fixture(scope="session")
def sl4():
    return catalog.sl(4)


@pytest.fixture(scope="session")
def sl5():
    return catalog.sl(5)


@pytest.fixture(scope="session")
def sl2_subs(sl2):
    return catalog.sl2_subalgebras(sl2)
