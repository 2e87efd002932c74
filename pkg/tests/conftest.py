import functools

import pytest
from hypothesis import settings

from triplecup import complex as cx

# numba compiles on first use, so per-example deadlines are meaningless
settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def torus(L, d=2):
    return cx.torus(L, d)


@functools.lru_cache(maxsize=None)
def t2_cubed():
    t = torus(3)
    return cx.product_of(t, t, t)


@pytest.fixture(scope="session")
def t3():
    return torus(3, 3)


@pytest.fixture(scope="session")
def t2():
    return torus(3)
