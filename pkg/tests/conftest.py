import pytest

from quiverchains.algebra import BaseAlgebra, ModuleCategory
from quiverchains.linalg import GF2
from quiverchains.quiver import a2_quiver, fork_quiver
from quiverchains.reps import RepCategory


@pytest.fixture
def vect():
    """mod-k over GF(2): plain vector spaces."""
    return ModuleCategory(BaseAlgebra(GF2, 1))


@pytest.fixture
def dual_numbers():
    """mod-k[x]/(x^2) over GF(2): the smallest non-semisimple base."""
    return ModuleCategory(BaseAlgebra(GF2, 2))


@pytest.fixture
def a2(vect):
    return RepCategory(a2_quiver(), vect)


@pytest.fixture
def a2n2(dual_numbers):
    return RepCategory(a2_quiver(), dual_numbers)


@pytest.fixture
def fork(dual_numbers):
    return RepCategory(fork_quiver(), dual_numbers)


def arrow_rep(cat, top_dim, bot_dim, rows):
    """A2 representation with vector-space vertices from a plain matrix."""
    m1 = cat.base.vector_module(top_dim)
    m2 = cat.base.vector_module(bot_dim)
    return cat.rep_from_matrices({"1": m1, "2": m2}, {"a": rows})
