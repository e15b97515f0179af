# -*- coding: utf-8 -*-
# pylint: disable=C0103, C0111, W0621


import pytest

from flocknav.sim.config import AgentSpec, SimConfig


@pytest.fixture
def two_agent_config(small_grid_map, fast_params):
    return SimConfig(
        small_grid_map,
        [
            AgentSpec("a0", ["H_00_00_0", "H_00_00_1", "J_01_00"]),
            AgentSpec("a1", ["V_00_00_0", "V_00_00_1", "J_00_01"]),
        ],
        mode="N",
        params=fast_params,
        seed=5,
        max_steps=3,
    )
