import pytest

from reflect.coxeter import CoxGroup


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(t, isogeny="adjoint"):
        if (t, isogeny) not in cache:
            cache[t, isogeny] = CoxGroup.of_type(t, isogeny)
        return cache[t, isogeny]

    return get
