#!/usr/bin/env python
# -*- coding: utf-8 -*-
# pylint: disable=C0103, C0111, W0621


import numpy as np
import pytest
import storefact

from flocknav.core.coordination import AgentTask
from flocknav.core.map_generation import example_map, generate_grid_map
from flocknav.core.params import MpcParams
from flocknav.mpc.solver import OPTIMAL, SolveOutcome
from flocknav.sim.config import AgentSpec, SimConfig


@pytest.fixture
def frozen_time(mocker):
    """
    Depend on this fixture to make every measured wall time zero by patching
    flocknav.core._time.perf_counter.
    """
    clock = mocker.patch("flocknav.core._time.perf_counter")
    clock.return_value = 0.0
    return clock


@pytest.fixture
def store(tmpdir):
    path = tmpdir.join("store").strpath
    url = "hfs://{}".format(path)
    return storefact.get_store_from_url(url)


@pytest.fixture
def store_factory(store):
    return lambda: store


@pytest.fixture(scope="session")
def figure_map():
    return example_map()


@pytest.fixture(scope="session")
def grid_map():
    return generate_grid_map()


@pytest.fixture(scope="session")
def small_grid_map():
    return generate_grid_map(cols=2, rows=2)


@pytest.fixture
def fast_params():
    """
    Short horizon parameters keeping closed-loop tests quick.
    """
    return MpcParams(n_t=8, max_iterations=80)


@pytest.fixture
def corridor_task():
    # J_00_00 -> H_00_00_0 -> H_00_00_1 -> J_01_00 along the bottom corridor
    return AgentTask("a0", ["J_00_00", "H_00_00_0", "H_00_00_1", "J_01_00"])


@pytest.fixture
def corridor_state():
    # centre of J_00_00, heading east, at rest
    return np.array([1.0, 1.0, 0.0, 0.0])


@pytest.fixture
def single_agent_config(small_grid_map, fast_params):
    return SimConfig(
        small_grid_map,
        [AgentSpec("a0", ["H_00_00_0", "H_00_00_1", "J_01_00"])],
        mode="D",
        params=fast_params,
        seed=3,
        max_steps=120,
    )


def _resting_outcome(problem, status=OPTIMAL, wall_time=0.0):
    return SolveOutcome(
        status=status,
        x=problem.z0,
        objective=0.0,
        violation=0.0,
        stationarity=0.0,
        iterations=1,
        inner_iterations=0,
        wall_time=wall_time,
        eq_multipliers=np.zeros(problem.n_eq),
        ineq_multipliers=np.zeros(problem.n_ineq),
        penalty=10.0,
    )


@pytest.fixture
def resting_solver(mocker):
    """
    Replace the solver of the simulation loop by one returning the warm start,
    which keeps every agent at rest. Set ``status`` or ``wall_times`` (agent id
    of the first flock member -> seconds) on the returned mock to change the
    outcomes.
    """

    def fake_solve(problem, params=None):
        wall_time = fake.wall_times.get(problem.agent_ids[0], 0.0)
        return _resting_outcome(problem, fake.status, wall_time)

    fake = mocker.patch("flocknav.sim.run.solve", side_effect=fake_solve)
    fake.status = OPTIMAL
    fake.wall_times = {}
    return fake
