# -*- coding: utf-8 -*-
"""
Hypothesis strategies and reference implementations shared by the test-suite.
"""

from collections import OrderedDict, deque

import hypothesis.strategies as hyp_st
import numpy as np
from hypothesis import assume

from flocknav.core.coordination import AgentTask
from flocknav.core.geometry import ConvexPolygon, Segment2
from flocknav.core.map_generation import generate_grid_map
from flocknav.core.params import MpcParams
from flocknav.core.semantic_map import RelevantElements, find_route
from flocknav.mpc.problem import AgentBlock, MpcProblem
from flocknav.mpc.warm_start import warm_start

COORDINATE_BOUND = 20.0

_angle_steps = 24


def coordinates(bound=COORDINATE_BOUND):
    return hyp_st.floats(
        min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False
    )


@hyp_st.composite
def points(draw, bound=COORDINATE_BOUND):
    return np.array([draw(coordinates(bound)), draw(coordinates(bound))])


@hyp_st.composite
def segments(draw, bound=COORDINATE_BOUND, min_length=1e-3):
    a = draw(points(bound))
    b = draw(points(bound).filter(lambda p: np.hypot(*(p - a)) > min_length))
    return Segment2(a, b)


@hyp_st.composite
def convex_polygons(draw, max_vertices=8, bound=10.0):
    """
    Convex polygons with vertices on a circle.

    The angles are multiples of 15 degrees, which keeps every polygon strictly
    convex with a clearly positive area.
    """
    steps = draw(
        hyp_st.lists(
            hyp_st.integers(min_value=0, max_value=_angle_steps - 1),
            min_size=3,
            max_size=max_vertices,
            unique=True,
        ).filter(_wide_enough)
    )
    angles = np.sort(np.asarray(steps, dtype=float)) * (2.0 * np.pi / _angle_steps)
    center = draw(points(bound))
    radius = draw(hyp_st.floats(min_value=0.5, max_value=5.0))
    vertices = center + radius * np.column_stack([np.cos(angles), np.sin(angles)])
    return ConvexPolygon(vertices)


def _wide_enough(steps):
    # rules out slivers whose vertices all lie within a quarter circle
    ordered = sorted(steps)
    gaps = np.diff(ordered + [ordered[0] + _angle_steps])
    return gaps.max() <= _angle_steps * 3 // 4


@hyp_st.composite
def grid_maps(draw):
    """
    Small benchmark grid maps.
    """
    cols = draw(hyp_st.integers(min_value=2, max_value=3))
    rows = draw(hyp_st.integers(min_value=2, max_value=3))
    width = draw(hyp_st.sampled_from([1.5, 2.0, 3.0]))
    block = (
        draw(hyp_st.sampled_from([2.0, 4.0, 5.0])),
        draw(hyp_st.sampled_from([2.0, 4.0, 5.0])),
    )
    return generate_grid_map(cols, rows, corridor_width=width, block=block)


@hyp_st.composite
def routes(draw, semantic_map, min_areas=1):
    """
    Shortest routes between two random areas of ``semantic_map``.
    """
    areas = semantic_map.areas
    start = draw(hyp_st.sampled_from(areas))
    goal = draw(hyp_st.sampled_from(areas))
    route = find_route(semantic_map, start, goal)
    assume(len(route) >= min_areas)
    return route


@hyp_st.composite
def abstract_tasks(draw, max_agents=8, n_areas=10, max_route=6):
    """
    Agent tasks over the area pool ``A0..A<n_areas - 1>``.

    Flock formation only inspects area ids, so the routes need no map.
    """
    n_agents = draw(hyp_st.integers(min_value=1, max_value=max_agents))
    area_ids = ["A{}".format(i) for i in range(n_areas)]
    tasks = []
    for i in range(n_agents):
        route = draw(
            hyp_st.lists(hyp_st.sampled_from(area_ids), min_size=1, max_size=max_route)
        )
        mode = draw(hyp_st.integers(min_value=0, max_value=len(route) - 1))
        tasks.append(AgentTask("agent-{}".format(i), route, mode))
    return tasks


def brute_force_flocks(tasks, n_ha):
    """
    Connected components of the horizon overlap graph by breadth first search.

    Returns
    -------
    flocks: set of frozenset
    """
    windows = {
        task.agent_id: set(task.route[task.mode : task.mode + n_ha + 1])
        for task in tasks
    }
    ids = [task.agent_id for task in tasks]
    adjacency = {
        a: [b for b in ids if b != a and windows[a] & windows[b]] for a in ids
    }
    seen = set()
    flocks = set()
    for start in ids:
        if start in seen:
            continue
        component = set()
        queue = deque([start])
        seen.add(start)
        while queue:
            current = queue.popleft()
            component.add(current)
            for neighbour in adjacency[current]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    queue.append(neighbour)
        flocks.add(frozenset(component))
    return flocks


def make_elements(walls=None, objectives=()):
    """
    Relevant elements of a synthetic horizon with one area per objective plus
    the goal area.

    Parameters
    ----------
    walls: dict, optional
        Wall id -> vertices.
    objectives: list of Segment2
    """
    walls = OrderedDict(
        (wall_id, np.asarray(vertices, dtype=float))
        for wall_id, vertices in (walls or {}).items()
    )
    objectives = list(objectives)
    areas = ["A{}".format(i) for i in range(len(objectives) + 1)]
    return RelevantElements(
        areas=areas,
        walls=walls,
        slot_walls=[list(walls)] + [[] for _ in objectives],
        active_interfaces=["I{}".format(i) for i in range(len(objectives))],
        objectives=objectives,
        events=objectives,
    )


def make_problem(agents, params):
    """
    Warm started problem of ``agents``, a list of ``(agent_id, state, elements)``.
    Every objective has weight one.
    """
    blocks = []
    offset = 0
    for agent_id, state, elements in agents:
        task = AgentTask(agent_id, list(elements.areas))
        block = AgentBlock(
            task, state, elements, np.ones(len(elements.objectives)), offset, params.n_t
        )
        blocks.append(block)
        offset += block.size
    problem = MpcProblem(blocks, params)
    problem.z0 = warm_start(problem)
    return problem


@hyp_st.composite
def wall_vertices(draw, bound=5.0):
    """
    Vertices of a segment or a small convex polygon.
    """
    if draw(hyp_st.booleans()):
        segment = draw(segments(bound, min_length=0.1))
        return np.array([segment.a, segment.b])
    return draw(convex_polygons(max_vertices=5, bound=bound)).vertices


@hyp_st.composite
def mpc_problems(
    draw, max_agents=3, max_walls=2, max_objectives=2, max_horizon=5, bound=5.0
):
    """
    Small problems of :func:`make_problem` with agents at random states, each
    with its own walls and objective lines.
    """
    params = MpcParams(n_t=draw(hyp_st.integers(min_value=1, max_value=max_horizon)))
    n_agents = draw(hyp_st.integers(min_value=1, max_value=max_agents))
    agents = []
    for i in range(n_agents):
        state = [
            draw(coordinates(bound)),
            draw(coordinates(bound)),
            draw(hyp_st.floats(min_value=-np.pi, max_value=np.pi)),
            draw(hyp_st.floats(min_value=0.0, max_value=1.0)),
        ]
        n_walls = draw(hyp_st.integers(min_value=0, max_value=max_walls))
        walls = OrderedDict(
            ("W{}".format(w), draw(wall_vertices(bound))) for w in range(n_walls)
        )
        objectives = draw(
            hyp_st.lists(segments(bound, min_length=0.1), max_size=max_objectives)
        )
        agents.append(("agent-{}".format(i), state, make_elements(walls, objectives)))
    return make_problem(agents, params)
