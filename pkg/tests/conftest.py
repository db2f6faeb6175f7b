import numpy as np
import pytest

from subregkit.polyhedra import Polyhedron
from subregkit.system import ConstraintSystem


def make_system(nx, ny, graph_ineq, graph_rhs, a_ineq=None, a_rhs=None,
                xbar=None, ybar=None, name=""):
    graph = Polyhedron.make(nx + ny, np.asarray(graph_ineq, float),
                            np.asarray(graph_rhs, float))
    A = Polyhedron.make(nx,
                        np.asarray(a_ineq, float) if a_ineq is not None else None,
                        np.asarray(a_rhs, float) if a_rhs is not None else None)
    return ConstraintSystem.make(
        nx, ny, graph, A,
        np.zeros(nx) if xbar is None else xbar,
        np.zeros(ny) if ybar is None else ybar,
        name=name)


@pytest.fixture
def halfline():
    """y >= x over the real line; S = {x <= 0}, all constants equal 1."""
    return make_system(1, 1, [[1, -1]], [0], name="halfline")


@pytest.fixture
def orthant():
    """y >= x1 with A = {x2 <= 0}; S is the negative orthant."""
    return make_system(2, 1, [[1, 0, -1]], [0], a_ineq=[[0, 1]], a_rhs=[0],
                       name="orthant")


@pytest.fixture
def vee():
    """y >= |x|; S = {0}, strongly subregular with modulus 1."""
    return make_system(1, 1, [[1, -1], [-1, -1]], [0, 0], name="vee")
