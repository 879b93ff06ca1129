import pytest

from wqg.fields import QQ, GF
from wqg import zoo


FIELDS = (QQ, GF(5))


@pytest.fixture(params=FIELDS, ids=("Q", "F5"))
def field(request):
    return request.param


@pytest.fixture(scope="session")
def pg2q():
    return zoo.pg2(QQ)


@pytest.fixture(scope="session")
def pg3q():
    return zoo.pg3(QQ)


@pytest.fixture(scope="session")
def k2q():
    return zoo.k2(QQ)


@pytest.fixture(scope="session")
def mxq():
    return zoo.mx(QQ)


@pytest.fixture(scope="session")
def eb2q():
    return zoo.eb2(QQ)


@pytest.fixture(scope="session")
def ebm2q():
    return zoo.ebm2(QQ)


def pg2_index():
    """Map arrow names g11, g12, g21, g22 to basis indices of pg2."""
    g = zoo.pair_groupoid(2)
    return {g.names[i]: i for i in range(4)}


@pytest.fixture(scope="session")
def gidx():
    return pg2_index()
