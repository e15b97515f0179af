# -*- coding: utf-8 -*-


import os

import pytest

from flocknav.core._compat import dump_json, load_json
from flocknav.core.coordination import AgentTask
from flocknav.core.errors import MapParseError, RouteError
from flocknav.core.params import AgentShape
from flocknav.core.semantic_map import save_map
from flocknav.sim.config import (
    AgentSpec,
    CooperationMode,
    SimConfig,
    builtin_scenario_names,
    load_builtin_scenario,
    load_scenario,
    resolve_map,
    save_scenario,
)


def _scenario(**kwargs):
    dct = {
        "map": "builtin:example",
        "agents": [{"id": "a0", "route": ["S0", "S1", "S2"]}],
    }
    dct.update(kwargs)
    return dump_json(dct)


@pytest.mark.parametrize(
    "value, expected",
    [
        ("A", CooperationMode.ALWAYS),
        ("dynamic", CooperationMode.DYNAMIC),
        ("Never", CooperationMode.NEVER),
        (CooperationMode.NEVER, CooperationMode.NEVER),
    ],
)
def test_parse_mode(value, expected):
    assert CooperationMode.parse(value) is expected


def test_parse_unknown_mode():
    with pytest.raises(ValueError, match="expected one of A, D, N"):
        CooperationMode.parse("X")


def test_mode_flocks():
    tasks = [AgentTask("a", ["A0", "A1"]), AgentTask("b", ["A1"]), AgentTask("c", ["A7"])]
    assert CooperationMode.ALWAYS.flocks(tasks, 1).flocks == [("a", "b", "c")]
    assert CooperationMode.DYNAMIC.flocks(tasks, 1).flocks == [("a", "b"), ("c",)]
    assert len(CooperationMode.NEVER.flocks(tasks, 1)) == 3


def test_agent_spec_dict():
    spec = AgentSpec("a0", ["S0", "S1"])
    assert spec.to_dict() == {"id": "a0", "route": ["S0", "S1"]}
    wide = spec.copy(shape=AgentShape(0.5, 0.6))
    assert wide.to_dict()["shape"] == {"r_v": 0.5, "r_soft": 0.6}
    assert AgentSpec.from_dict(wide.to_dict()).shape == AgentShape(0.5, 0.6)
    task = wide.initial_task()
    assert task.mode == 0
    assert task.shape.r_v == 0.5


@pytest.mark.parametrize(
    "dct, exception",
    [
        ({"id": "a0"}, MapParseError),
        (["a0"], MapParseError),
        ({"id": "a0", "route": ["S0"], "colour": "red"}, ValueError),
    ],
)
def test_agent_spec_errors(dct, exception):
    with pytest.raises(exception):
        AgentSpec.from_dict(dct)


def test_sim_config_validation(figure_map):
    agent = AgentSpec("a0", ["S0", "S1"])
    with pytest.raises(ValueError, match="at least one agent"):
        SimConfig(figure_map, [])
    with pytest.raises(ValueError, match="unique"):
        SimConfig(figure_map, [agent, agent])
    with pytest.raises(RouteError):
        SimConfig(figure_map, [AgentSpec("a0", ["S0", "S2"])])
    with pytest.raises(ValueError, match="plant integrator"):
        SimConfig(figure_map, [agent], plant_integrator="midpoint")
    with pytest.raises(ValueError):
        SimConfig(figure_map, [agent], runs=0)
    with pytest.raises(ValueError):
        SimConfig(figure_map, [agent], max_steps=0)


def test_load_scenario_defaults():
    config = load_scenario(_scenario())
    assert config.mode is CooperationMode.DYNAMIC
    assert config.runs == 1
    assert config.seed == 0
    assert config.max_steps == 400
    assert config.map_ref == "builtin:example"
    assert config.agent_ids == ["a0"]
    assert config.semantic_map.areas == ["S0", "S1", "S2"]


def test_load_scenario_overrides():
    buf = _scenario(mode="A", runs=3, params={"n_t": 12, "q": 2.0})
    config = load_scenario(buf, mode="N", runs=None, params={"n_t": 10})
    assert config.mode is CooperationMode.NEVER
    assert config.runs == 3
    assert config.params.n_t == 10
    assert config.params.q == 2.0
    with pytest.raises(ValueError, match="Unknown scenario override"):
        load_scenario(buf, agents=[])


@pytest.mark.parametrize(
    "buf, exception",
    [
        (b"{", MapParseError),
        (b"[]", MapParseError),
        (b'{"map": "builtin:example"}', MapParseError),
        (b'{"map": "builtin:example", "agents": {}}', MapParseError),
        (_scenario(robots=[]), ValueError),
        (_scenario(map="builtin:nowhere"), ValueError),
        (_scenario(map=3), MapParseError),
        (_scenario(params={"horizon": 3}), ValueError),
        (_scenario(agents=[{"id": "a0", "route": ["S0", "S2"]}]), RouteError),
    ],
)
def test_load_scenario_errors(buf, exception):
    with pytest.raises(exception):
        load_scenario(buf)


def test_relative_map_path(tmpdir, figure_map):
    tmpdir.join("maps").mkdir()
    tmpdir.join("maps", "figure.json").write_binary(save_map(figure_map))
    config = load_scenario(_scenario(map="maps/figure.json"), base_dir=tmpdir.strpath)
    assert config.semantic_map == figure_map
    assert config.map_ref == os.path.join(tmpdir.strpath, "maps", "figure.json")
    with pytest.raises(IOError):
        load_scenario(_scenario(map="maps/missing.json"), base_dir=tmpdir.strpath)


def test_save_scenario():
    config = load_scenario(_scenario(mode="N", seed=4))
    dct = load_json(save_scenario(config))
    assert dct["map"] == "builtin:example"
    assert dct["mode"] == "N"
    assert dct["seed"] == 4
    assert dct["agents"] == [{"id": "a0", "route": ["S0", "S1", "S2"]}]
    assert load_scenario(save_scenario(config)).to_dict() == config.to_dict()


def test_resolve_builtin_maps(figure_map, grid_map):
    assert resolve_map("builtin:example") == (figure_map, "builtin:example")
    assert resolve_map("builtin:benchmark")[0] == grid_map


def test_builtin_scenarios():
    assert builtin_scenario_names() == [
        "scenario1",
        "scenario2",
        "scenario3",
        "scenario4",
    ]
    for name, n_agents in zip(builtin_scenario_names(), (2, 2, 4, 4)):
        config = load_builtin_scenario(name, runs=2)
        assert len(config.agents) == n_agents
        assert config.runs == 2
        assert config.mode is CooperationMode.DYNAMIC
        assert config.map_ref == "builtin:benchmark"


def _route_sets(**kwargs):
    dct = {
        "map": "builtin:example",
        "route_sets": [
            [{"id": "a0", "route": ["S0", "S1", "S2"]}],
            [{"id": "a0", "route": ["S2", "S1", "S0"]}],
        ],
    }
    dct.update(kwargs)
    return dump_json(dct)


def test_load_route_sets():
    config = load_scenario(_route_sets())
    assert config.route_set == 0
    assert len(config.route_sets) == 2
    assert config.agents[0].route == ["S0", "S1", "S2"]

    second = load_scenario(_route_sets(route_set=1))
    assert second.route_set == 1
    assert second.agents[0].route == ["S2", "S1", "S0"]
    assert load_scenario(_route_sets(), route_set=1).to_dict() == second.to_dict()


def test_select_route_set():
    config = load_scenario(_route_sets(mode="N"))
    second = config.select_route_set(1)
    assert second.route_set == 1
    assert second.mode is CooperationMode.NEVER
    assert second.agents[0].route == ["S2", "S1", "S0"]
    with pytest.raises(ValueError, match="Route set 2 does not exist"):
        config.select_route_set(2)


def test_route_sets_round_trip():
    config = load_scenario(_route_sets(route_set=1))
    dct = load_json(save_scenario(config))
    assert "agents" not in dct
    assert dct["route_set"] == 1
    assert len(dct["route_sets"]) == 2
    assert load_scenario(save_scenario(config)).to_dict() == config.to_dict()


@pytest.mark.parametrize(
    "buf, exception",
    [
        (_route_sets(route_set=2), ValueError),
        (_route_sets(route_set=-1), ValueError),
        (_route_sets(route_sets=[]), MapParseError),
        (_route_sets(route_sets={}), MapParseError),
        (_route_sets(route_sets=[{}]), MapParseError),
        (_route_sets(route_sets=[[{"id": "a0", "route": ["S0", "S2"]}]]), RouteError),
        (_route_sets(agents=[{"id": "a0", "route": ["S0"]}]), MapParseError),
    ],
)
def test_load_route_sets_errors(buf, exception):
    with pytest.raises(exception):
        load_scenario(buf)


def test_agents_must_match_the_route_set(figure_map):
    first = [AgentSpec("a0", ["S0", "S1", "S2"])]
    second = [AgentSpec("a0", ["S2", "S1", "S0"])]
    config = SimConfig(figure_map, second, route_sets=[first, second], route_set=1)
    assert config.agent_ids == ["a0"]
    with pytest.raises(ValueError, match="differ from route set 0"):
        SimConfig(figure_map, second, route_sets=[first, second])


def test_builtin_route_sets():
    for name in ("scenario1", "scenario3"):
        config = load_builtin_scenario(name)
        assert len(config.route_sets) == 2
        other = load_builtin_scenario(name, route_set=1)
        assert other.agent_ids == config.agent_ids
        # the second set drives the routes of the first backwards
        assert [a.route[::-1] for a in other.agents] == [
            a.route for a in config.agents
        ]
