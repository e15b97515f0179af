# -*- coding: utf-8 -*-


from collections import OrderedDict

import numpy as np
import pytest

from flocknav.core.coordination import AgentTask
from flocknav.core.params import MpcParams
from flocknav.core.testing import make_elements, make_problem
from flocknav.mpc.problem import build_problem
from flocknav.mpc.solver import ITERATION_LIMIT, SolveOutcome
from flocknav.mpc.warm_start import (
    FlockSolution,
    cold_plane,
    shift_trajectory,
    warm_start,
)


def _outcome(problem):
    return SolveOutcome(
        status=ITERATION_LIMIT,
        x=problem.z0,
        objective=0.0,
        violation=0.0,
        stationarity=0.0,
        iterations=1,
        inner_iterations=0,
        wall_time=0.0,
        eq_multipliers=np.ones(problem.n_eq),
        ineq_multipliers=np.ones(problem.n_ineq),
        penalty=100.0,
    )


@pytest.mark.parametrize(
    "shift, expected",
    [
        (0.0, [0.0, 1.0, 2.0, 3.0]),
        (1.0, [1.0, 2.0, 3.0, 3.0]),
        (0.5, [0.5, 1.5, 2.5, 3.0]),
    ],
)
def test_shift_trajectory(shift, expected):
    values = np.arange(4, dtype=float)[:, None] * np.ones((1, 2))
    np.testing.assert_allclose(shift_trajectory(values, shift)[:, 0], expected)


@pytest.mark.parametrize(
    "position, expected",
    [
        # halfway to the wall
        ((0.0, 0.0), [1.0, 0.0, 1.0]),
        # the soft radius dominates the midpoint
        ((1.0, 0.0), [1.0, 0.0, 1.5]),
        # never cut into the wall
        ((1.7, 0.0), [1.0, 0.0, 2.0]),
        ((3.0, 0.0), [-1.0, 0.0, -2.5]),
    ],
)
def test_cold_plane(position, expected):
    wall = [[2.0, -1.0], [2.0, 1.0]]
    np.testing.assert_allclose(cold_plane(position, wall, 0.45), expected)


def test_cold_plane_inside_the_wall():
    square = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]
    plane = cold_plane((1.5, 1.0), square, 0.45)
    # pointing at the centroid, the plane stays below every vertex
    np.testing.assert_allclose(plane[:2], [-1.0, 0.0])
    assert np.all(np.dot(square, plane[:2]) >= plane[2] - 1e-12)


def test_cold_start_holds_the_state(wall_problem):
    unpacked = wall_problem.unpack(warm_start(wall_problem))["a"]
    np.testing.assert_allclose(unpacked["states"], np.tile([1.0, 0.0, 0.0, 0.0], (7, 1)))
    np.testing.assert_allclose(unpacked["inputs"], 0.0)
    np.testing.assert_allclose(unpacked["slacks"], 0.0)


def test_soft_slacks_are_minimal(small_params):
    elements = make_elements({"W": [[2.0, -1.0], [2.0, 1.0]]})
    problem = make_problem([("a", [1.7, 0.0, 0.0, 0.0], elements)], small_params)
    unpacked = problem.unpack(problem.z0)["a"]
    # plane at b = 2, separation 0.3 against the soft radius 0.45
    np.testing.assert_allclose(unpacked["slacks"], 0.15)


def test_pair_slacks(pair_problem):
    slacks = pair_problem.z0[pair_problem.pair_slack_index()]
    distance2 = 1.5 ** 2 + 0.1 ** 2
    np.testing.assert_allclose(slacks, max(0.0, 0.9 ** 2 - distance2))


def test_reuse_shifts_the_previous_solution(wall_problem):
    block = wall_problem.blocks[0]
    K = wall_problem.n_knots
    states = np.tile(block.x0, (K, 1))
    states[:, 0] += np.arange(K)
    solution = FlockSolution(
        ("a",),
        wall_problem.n_t,
        states={"a": states},
        inputs={"a": np.tile([0.1, 0.0], (wall_problem.n_t, 1))},
        planes={"a": OrderedDict([("W", np.array([2.0, 0.0, 1.8]))])},
    )
    z = warm_start(wall_problem, solution, shift=1.0)
    unpacked = wall_problem.unpack(z)["a"]
    np.testing.assert_allclose(unpacked["states"][0], block.x0)
    np.testing.assert_allclose(unpacked["states"][1:-1, 0], states[2:, 0])
    np.testing.assert_allclose(unpacked["inputs"], np.tile([0.1, 0.0], (6, 1)))
    # oversized plane normals are scaled back into the unit ball
    np.testing.assert_allclose(unpacked["planes"]["W"], [1.0, 0.0, 1.8])


def test_other_flock_starts_cold(wall_problem):
    solution = FlockSolution(
        ("a", "b"), wall_problem.n_t, states={}, inputs={}, planes={}
    )
    np.testing.assert_allclose(warm_start(wall_problem, solution), wall_problem.z0)


def test_flock_solution_from_outcome(pair_problem):
    solution = FlockSolution.from_outcome(pair_problem, _outcome(pair_problem))
    assert solution.agent_ids == ("a", "b")
    assert solution.signature == pair_problem.signature
    np.testing.assert_allclose(solution.first_input("b"), [0.0, 0.0])
    assert list(solution.planes["b"]) == ["V"]


def test_build_problem_reuses_multipliers_of_the_same_structure(small_params):
    tasks = [AgentTask("a", ["A0"])]
    elements = {"a": make_elements({"W": [[2.0, -1.0], [2.0, 1.0]]})}
    states = {"a": np.array([1.0, 0.0, 0.0, 0.0])}
    first = build_problem(["a"], tasks, None, small_params, states, elements=elements)
    solution = FlockSolution.from_outcome(first, _outcome(first))
    second = build_problem(
        ["a"], tasks, None, small_params, states, prev_solution=solution, elements=elements
    )
    assert second.penalty == 100.0
    np.testing.assert_array_equal(second.eq_multipliers, np.ones(first.n_eq))

    other = MpcParams(n_t=4)
    third = build_problem(
        ["a"], tasks, None, other, states, prev_solution=solution, elements=elements
    )
    assert third.penalty is None
    assert third.eq_multipliers is None


def test_build_problem_caps_a_reused_penalty(small_params):
    tasks = [AgentTask("a", ["A0"])]
    elements = {"a": make_elements({"W": [[2.0, -1.0], [2.0, 1.0]]})}
    states = {"a": np.array([1.0, 0.0, 0.0, 0.0])}
    first = build_problem(["a"], tasks, None, small_params, states, elements=elements)
    outcome = _outcome(first)
    outcome.penalty = 1e8
    solution = FlockSolution.from_outcome(first, outcome)
    second = build_problem(
        ["a"], tasks, None, small_params, states, prev_solution=solution, elements=elements
    )
    assert second.penalty == 1e4
