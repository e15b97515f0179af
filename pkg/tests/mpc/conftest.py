# -*- coding: utf-8 -*-
# pylint: disable=C0103, C0111, W0621


import numpy as np
import pytest

from flocknav.core.geometry import Segment2
from flocknav.core.params import MpcParams
from flocknav.core.testing import make_elements, make_problem

# wall along x = 2 and the objective line x = 4, approached from x < 4
WALL = [[2.0, -1.0], [2.0, 1.0]]
FINISH = Segment2((4.0, -1.0), (4.0, 1.0))


@pytest.fixture
def small_params():
    return MpcParams(n_t=6, max_iterations=80)


@pytest.fixture
def wall_elements():
    return make_elements({"W": WALL}, [FINISH])


@pytest.fixture
def wall_problem(wall_elements, small_params):
    return make_problem([("a", [1.0, 0.0, 0.0, 0.0], wall_elements)], small_params)


@pytest.fixture
def pair_problem(small_params):
    east = make_elements({"W": WALL}, [FINISH])
    west = make_elements(
        {"V": [[-2.0, 1.0], [-2.0, -1.0], [-1.0, -1.0]]},
        [Segment2((-4.0, 1.0), (-4.0, -1.0))],
    )
    return make_problem(
        [
            ("a", [0.0, 0.0, 0.0, 0.2], east),
            ("b", [1.5, 0.1, np.pi, 0.2], west),
        ],
        small_params,
    )


@pytest.fixture
def open_problem():
    # no walls, only the objective line ahead
    params = MpcParams(n_t=8, max_iterations=80)
    elements = make_elements(None, [FINISH])
    return make_problem([("a", [0.0, 0.0, 0.0, 0.0], elements)], params)


@pytest.fixture
def corridor_problem():
    # head-on encounter in a 2 m wide corridor, default horizon
    walls = {"N": [[-3.0, 1.0], [7.0, 1.0]], "S": [[-3.0, -1.0], [7.0, -1.0]]}
    east = make_elements(walls, [Segment2((6.0, -1.0), (6.0, 1.0))])
    west = make_elements(walls, [Segment2((-2.0, 1.0), (-2.0, -1.0))])
    return make_problem(
        [
            ("a", [0.0, -0.1, 0.0, 0.0], east),
            ("b", [4.0, 0.1, np.pi, 0.0], west),
        ],
        MpcParams(n_t=25),
    )
