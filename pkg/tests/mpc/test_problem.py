# -*- coding: utf-8 -*-


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flocknav.core.coordination import AgentTask
from flocknav.core.errors import ProblemDimensionError
from flocknav.core.params import MpcParams
from flocknav.core.semantic_map import relevant_elements
from flocknav.core.testing import make_elements, make_problem, mpc_problems
from flocknav.mpc.problem import INEQUALITY_GROUPS, build_problem


def _finite_differences(fun, z, eps=1e-6):
    columns = []
    for k in range(z.size):
        step = np.zeros_like(z)
        step[k] = eps
        upper = np.atleast_1d(fun(z + step))
        lower = np.atleast_1d(fun(z - step))
        columns.append((upper - lower) / (2 * eps))
    return np.stack(columns, axis=-1)


def test_census_single_agent_single_wall(wall_elements):
    problem = make_problem(
        [("a", [1.0, 0.0, 0.0, 0.0], wall_elements)], MpcParams(n_t=2)
    )
    census = problem.census()
    expected = {
        "agents": 1,
        "pairs": 0,
        "walls": 1,
        "variables": 22,
        "states": 12,
        "inputs": 4,
        "planes": 3,
        "wall_slacks": 3,
        "pair_slacks": 0,
        "initial": 4,
        "dynamics": 8,
        "vertex": 2,
        "wall_hard": 3,
        "norm": 1,
        "wall_soft": 3,
        "pair_hard": 0,
        "pair_soft": 0,
    }
    assert dict(census) == expected
    assert problem.n_vars == 22
    assert problem.n_eq == 12
    assert problem.n_ineq == 9


def test_census_pair(pair_problem):
    census = pair_problem.census()
    assert census["pairs"] == 1
    assert census["variables"] == 2 * 50 + 7
    assert census["vertex"] == 5
    assert census["pair_hard"] == census["pair_soft"] == 7
    assert pair_problem.n_ineq == 5 + 14 + 2 + 14 + 7 + 7
    assert pair_problem.agent_ids == ("a", "b")


def test_group_slices_cover_the_inequalities(pair_problem):
    slices = pair_problem.group_slices()
    assert tuple(slices) == INEQUALITY_GROUPS
    assert slices["vertex"].start == 0
    assert slices["pair_soft"].stop == pair_problem.n_ineq
    z = pair_problem.z0
    assert pair_problem.ineq_constraints(z).shape == (pair_problem.n_ineq,)
    assert pair_problem.eq_constraints(z).shape == (pair_problem.n_eq,)


def test_objective_at_rest(wall_problem):
    # 7 knots at x = 1, three metres before the objective line
    assert wall_problem.objective(wall_problem.z0) == pytest.approx(7 * (9.0 + 30.0))


def test_separating_plane_certificate(wall_problem):
    z = wall_problem.z0
    plane = wall_problem.unpack(z)["a"]["planes"]["W"]
    np.testing.assert_allclose(plane, [1.0, 0.0, 1.5])
    slices = wall_problem.group_slices()
    g = wall_problem.ineq_constraints(z)
    np.testing.assert_allclose(g[slices["vertex"]], [0.5, 0.5])
    np.testing.assert_allclose(g[slices["wall_hard"]], 0.1)
    np.testing.assert_allclose(g[slices["norm"]], 0.0, atol=1e-12)
    np.testing.assert_allclose(g[slices["wall_soft"]], 0.05)
    assert wall_problem.violation(z) < 1e-12


def test_gradient_matches_finite_differences(pair_problem):
    z = np.random.RandomState(0).uniform(-1.0, 1.0, pair_problem.n_vars)
    np.testing.assert_allclose(
        pair_problem.gradient(z),
        _finite_differences(pair_problem.objective, z),
        rtol=1e-5,
        atol=1e-5,
    )


@pytest.mark.parametrize(
    "values, jacobian",
    [("eq_constraints", "eq_jacobian"), ("ineq_constraints", "ineq_jacobian")],
)
def test_jacobians_match_finite_differences(pair_problem, values, jacobian):
    z = np.random.RandomState(1).uniform(-1.0, 1.0, pair_problem.n_vars)
    expected = _finite_differences(getattr(pair_problem, values), z)
    actual = getattr(pair_problem, jacobian)(z).toarray()
    np.testing.assert_allclose(actual, expected, rtol=1e-5, atol=1e-6)


_random_vectors = st.integers(min_value=0, max_value=2 ** 32 - 1)


def _random_vector(problem, seed):
    return np.random.RandomState(seed).uniform(-2.0, 2.0, problem.n_vars)


@given(problem=mpc_problems(), seed=_random_vectors)
@settings(max_examples=100, deadline=None)
def test_gradient_matches_finite_differences_on_random_problems(problem, seed):
    z = _random_vector(problem, seed)
    np.testing.assert_allclose(
        problem.gradient(z),
        _finite_differences(problem.objective, z, eps=1e-5),
        rtol=1e-6,
        atol=1e-5,
    )


@given(problem=mpc_problems(), seed=_random_vectors)
@settings(max_examples=100, deadline=None)
def test_jacobians_match_finite_differences_on_random_problems(problem, seed):
    z = _random_vector(problem, seed)
    for values, jacobian in (
        (problem.eq_constraints, problem.eq_jacobian),
        (problem.ineq_constraints, problem.ineq_jacobian),
    ):
        expected = _finite_differences(values, z, eps=1e-5)
        actual = jacobian(z).toarray()
        assert actual.shape == expected.shape
        np.testing.assert_allclose(actual, expected, rtol=1e-6, atol=1e-6)


def test_euler_trajectory_has_no_dynamics_residual(wall_problem):
    z = wall_problem.z0.copy()
    index = wall_problem.blocks[0].state_index()
    # constant unit speed along x
    z[index[:, 3]] = 1.0
    z[index[:, 0]] = 1.0 + 0.5 * np.arange(index.shape[0])
    np.testing.assert_allclose(wall_problem.eq_constraints(z)[4:], 0.0, atol=1e-12)


def test_bounds(wall_problem):
    block = wall_problem.blocks[0]
    states = block.state_index()
    inputs = block.input_index()
    np.testing.assert_array_equal(wall_problem.lb[states[0]], block.x0)
    np.testing.assert_array_equal(wall_problem.ub[states[0]], block.x0)
    assert np.all(wall_problem.ub[states[1:, 3]] == 1.0)
    assert np.all(wall_problem.lb[inputs[:, 1]] == -0.5)
    assert np.all(wall_problem.lb[block.slack_index()] == 0.0)
    assert np.all(wall_problem.ub[block.plane_index()[:, :2]] == 1.0)


def test_check_vector(wall_problem):
    with pytest.raises(ProblemDimensionError):
        wall_problem.objective(np.zeros(3))


def test_unpack(pair_problem):
    unpacked = pair_problem.unpack(pair_problem.z0)
    assert list(unpacked) == ["a", "b"]
    assert unpacked["b"]["states"].shape == (7, 4)
    assert unpacked["b"]["inputs"].shape == (6, 2)
    assert list(unpacked["b"]["planes"]) == ["V"]
    assert unpacked["a"]["slacks"].shape == (1, 7)


def test_block_lookup(pair_problem):
    assert pair_problem.block("b").agent_id == "b"
    with pytest.raises(KeyError):
        pair_problem.block("c")


def test_problem_needs_agents():
    with pytest.raises(ValueError):
        make_problem([], MpcParams(n_t=2))


def test_build_problem_on_the_grid(
    small_grid_map, corridor_task, corridor_state, fast_params
):
    problem = build_problem(
        ["a0"], [corridor_task], small_grid_map, fast_params, {"a0": corridor_state}
    )
    elements = relevant_elements(
        small_grid_map, corridor_task.route, 0, fast_params.n_h
    )
    assert problem.agent_ids == ("a0",)
    assert problem.census()["walls"] == len(elements.walls)
    assert problem.blocks[0].wall_ids == elements.wall_ids
    # no previous prediction, only the first objective counts
    np.testing.assert_array_equal(problem.blocks[0].weights, [1.0, 0.0, 0.0])
    z0 = problem.z0
    assert np.all(z0 >= problem.lb) and np.all(z0 <= problem.ub)
    assert problem.violation(z0) < 1e-9


def test_build_problem_orders_the_flock(small_params):
    elements = make_elements()
    tasks = {agent_id: AgentTask(agent_id, ["A0"]) for agent_id in ("b", "a")}
    states = {"a": np.zeros(4), "b": np.array([3.0, 0.0, 0.0, 0.0])}
    problem = build_problem(
        ["b", "a"],
        tasks,
        None,
        small_params,
        states,
        elements={"a": elements, "b": elements},
    )
    assert problem.agent_ids == ("a", "b")
    assert problem.blocks[1].x_offset == problem.blocks[0].size


def test_agent_block_checks_state():
    with pytest.raises(ValueError, match="needs 4 entries"):
        make_problem([("a", [0.0, 0.0], make_elements())], MpcParams(n_t=2))
