import math

import numpy as np
import pytest

from rdr.geometry import VBody, cube_vertices

SQRT3 = math.sqrt(3.0)


@pytest.fixture
def tetra():
    v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float) / SQRT3
    return VBody(v)


@pytest.fixture
def cube():
    return VBody(cube_vertices(1.0))


@pytest.fixture
def octahedron():
    return VBody(np.vstack([np.eye(3), -np.eye(3)]))
