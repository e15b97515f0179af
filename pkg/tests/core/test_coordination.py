# -*- coding: utf-8 -*-


import pytest
from hypothesis import given
from hypothesis import strategies as st

from flocknav.core.coordination import (
    AgentTask,
    FlockSet,
    always_flocks,
    check_event,
    form_flocks,
    never_flocks,
    semantic_horizon,
)
from flocknav.core.errors import RouteError
from flocknav.core.testing import abstract_tasks, brute_force_flocks


def test_agent_task_validation():
    with pytest.raises(RouteError):
        AgentTask("a", [])
    with pytest.raises(RouteError):
        AgentTask("a", ["A0", "A1"], mode=2)


def test_agent_task_advance():
    task = AgentTask("a", ["A0", "A1"])
    assert task.current_area == "A0"
    assert not task.completed
    advanced = task.advance()
    assert advanced.mode == 1
    assert advanced.completed
    assert task.mode == 0
    with pytest.raises(RouteError):
        advanced.advance()


@pytest.mark.parametrize(
    "mode, n, expected",
    [(0, 0, ["A0"]), (0, 2, ["A0", "A1", "A2"]), (2, 5, ["A2", "A3"]), (3, 1, ["A3"])],
)
def test_semantic_horizon(mode, n, expected):
    task = AgentTask("a", ["A0", "A1", "A2", "A3"], mode)
    assert semantic_horizon(task, n) == expected


def test_form_flocks_example():
    tasks = [
        AgentTask("a", ["A0", "A1", "A2"]),
        AgentTask("b", ["A2", "A3"]),
        AgentTask("c", ["A3", "A4"]),
        AgentTask("d", ["A9"]),
    ]
    assert form_flocks(tasks, 0).flocks == [("a",), ("b",), ("c",), ("d",)]
    # a-b share nothing within one area, b-c share A3
    assert form_flocks(tasks, 1).flocks == [("a",), ("b", "c"), ("d",)]
    assert form_flocks(tasks, 2).flocks == [("a", "b", "c"), ("d",)]


def test_form_flocks_rejects_duplicate_ids():
    with pytest.raises(ValueError, match="unique"):
        form_flocks([AgentTask("a", ["A0"]), AgentTask("a", ["A1"])], 1)


def test_always_and_never_flocks():
    tasks = [AgentTask(name, ["A0"]) for name in ("c", "a", "b")]
    assert always_flocks(tasks).flocks == [("a", "b", "c")]
    assert never_flocks(tasks).flocks == [("a",), ("b",), ("c",)]
    assert never_flocks(tasks).mean_size == 1.0


@given(abstract_tasks(), st.integers(min_value=0, max_value=4))
def test_form_flocks_matches_breadth_first_search(tasks, n_ha):
    flocks = form_flocks(tasks, n_ha)
    assert flocks.as_sets() == brute_force_flocks(tasks, n_ha)
    assert flocks.agent_ids == sorted(task.agent_id for task in tasks)


@given(abstract_tasks(), st.integers(min_value=0, max_value=4), st.randoms())
def test_form_flocks_ignores_task_order(tasks, n_ha, rnd):
    shuffled = list(tasks)
    rnd.shuffle(shuffled)
    assert form_flocks(shuffled, n_ha) == form_flocks(tasks, n_ha)


@given(abstract_tasks(), st.integers(min_value=0, max_value=4))
def test_larger_horizons_only_merge_flocks(tasks, n_ha):
    smaller = form_flocks(tasks, n_ha)
    larger = form_flocks(tasks, n_ha + 1)
    for flock in smaller:
        assert set(flock) <= set(larger.flock_of(flock[0]))
    assert len(larger) <= len(smaller)


def test_flock_set_validation():
    with pytest.raises(ValueError, match="more than one flock"):
        FlockSet([["a", "b"], ["b"]])
    with pytest.raises(ValueError, match="empty"):
        FlockSet([[]])
    with pytest.raises(KeyError):
        FlockSet([["a"]]).flock_of("b")


def test_flock_set_is_normalized():
    flocks = FlockSet([["d", "c"], ["b", "a"]])
    assert flocks.flocks == [("a", "b"), ("c", "d")]
    assert flocks == FlockSet([["a", "b"], ["c", "d"]])
    assert flocks.sizes == [2, 2]
    assert flocks.mean_size == 2.0


def test_check_event(figure_map):
    task = AgentTask("a", ["S0", "S1", "S2"])
    assert check_event(task, (-3.0, 0.0), figure_map) is None
    assert check_event(task, (-3.0, 2.5), figure_map) == 1
    # events are only raised for the next area of the route
    assert check_event(task, (0.0, 2.5), figure_map) is None
    finished = AgentTask("a", ["S0", "S1", "S2"], 2)
    assert check_event(finished, (0.0, 2.5), figure_map) is None


def test_check_event_on_the_interface(figure_map):
    task = AgentTask("a", ["S0", "S1", "S2"])
    # the closed next area already contains its interface
    assert check_event(task, (-3.0, 2.0), figure_map) == 1

