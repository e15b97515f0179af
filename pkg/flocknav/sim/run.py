# -*- coding: utf-8 -*-
"""
The closed-loop receding horizon simulation of a single run.
"""

import logging
from collections import OrderedDict

import dask
import numpy as np
from dask import delayed

from flocknav.core import _time, naming
from flocknav.core.coordination import check_event
from flocknav.core.errors import SamplingError
from flocknav.core.geometry import (
    point_in_polygon,
    point_polygon_distance,
    point_segment_distance,
)
from flocknav.core.semantic_map import relevant_elements
from flocknav.mpc.dynamics import AgentState, get_integrator
from flocknav.mpc.problem import build_problem
from flocknav.mpc.solver import INFEASIBLE as SOLVER_INFEASIBLE
from flocknav.mpc.solver import ITERATION_LIMIT, solve
from flocknav.mpc.warm_start import FlockSolution
from flocknav.sim.record import COLLISION, FULL, INFEASIBLE, MINOR, RunRecord

LOGGER = logging.getLogger(__name__)


def sample_start_pose(
    area, shape, occupied, rng, max_rejections=naming.MAX_SAMPLING_REJECTIONS
):
    """
    Draw a collision free start pose inside ``area``.

    Positions are sampled uniformly from the bounding box of ``area`` and
    rejected unless they lie inside with a clearance of at least ``r_v`` to
    the area border and ``2 r_v`` to every pose in ``occupied``. The heading
    is uniform in ``(-pi, pi]``, the velocity zero.

    Parameters
    ----------
    area: ConvexPolygon
    shape: AgentShape
    occupied: list of AgentState
    rng: numpy.random.Generator
    max_rejections: int

    Returns
    -------
    pose: AgentState

    Raises
    ------
    SamplingError
        If no pose was accepted within ``max_rejections`` draws.
    """
    xmin, ymin, xmax, ymax = area.bounds
    r_v = shape.r_v
    others = np.asarray([pose[:2] for pose in occupied], dtype=float).reshape(-1, 2)
    for attempt in range(max_rejections):
        p = rng.uniform((xmin, ymin), (xmax, ymax))
        if not point_in_polygon(p, area):
            continue
        if min(point_segment_distance(p, a, b) for a, b in area.edges()) < r_v:
            continue
        if others.size and np.min(np.hypot(*(others - p).T)) < 2.0 * r_v:
            continue
        theta = np.pi - rng.uniform(0.0, 2.0 * np.pi)
        if attempt > max_rejections // 2:
            LOGGER.warning("Start pose accepted after %s rejections", attempt)
        return AgentState(float(p[0]), float(p[1]), float(theta), 0.0)
    raise SamplingError(
        "No collision free start pose found in {} draws; the area {} is too "
        "small".format(max_rejections, area.bounds)
    )


def _solve_flocks(problems, params, parallel):
    if parallel and len(problems) > 1:
        return list(
            dask.compute(
                *[delayed(solve)(problem, params) for problem in problems],
                scheduler="threads"
            )
        )
    return [solve(problem, params) for problem in problems]


def _check_collisions(states, shapes, boundaries):
    """
    Footprint overlaps between agents and with boundary polygons.

    Returns
    -------
    overlaps: list of tuple(str, list of str, float)
        ``(kind, ids, overlap)`` with ``kind`` ``"agent"`` or ``"boundary"``.
    agent_clearance, wall_clearance: float
        Smallest distances between footprints.
    """
    ids = list(states)
    overlaps = []
    agent_clearance = np.inf
    wall_clearance = np.inf
    for i, a in enumerate(ids):
        pa = states[a][:2]
        for b in ids[i + 1 :]:
            gap = float(np.hypot(*(pa - states[b][:2]))) - shapes[a].r_v - shapes[b].r_v
            agent_clearance = min(agent_clearance, gap)
            if gap < 0:
                overlaps.append(("agent", [a, b], -gap))
        for boundary_id, polygon in boundaries:
            gap = point_polygon_distance(pa, polygon) - shapes[a].r_v
            wall_clearance = min(wall_clearance, gap)
            if gap < 0:
                overlaps.append(("boundary", [a, boundary_id], -gap))
    return overlaps, agent_clearance, wall_clearance


def _record_states(record, step, states, tasks):
    for agent_id, state in states.items():
        record.trajectory.append(
            [step, agent_id]
            + [float(value) for value in state]
            + [tasks[agent_id].mode]
        )


def run_once(config, run_index=0, seed=None):
    """
    Simulate one run of a scenario.

    Every control step the flocks are solved, the first input of every agent
    is applied for one control period and area events advance the modes. Flock
    formation, element retrieval and problem setup run at the first step and
    after every mode change; this is reported as configuration time.

    Parameters
    ----------
    config: SimConfig
    run_index: int
    seed: int or list of int, optional
        Seed of the random stream; defaults to ``[config.seed, run_index]``.

    Returns
    -------
    record: RunRecord
    """
    semantic_map = config.semantic_map
    params = config.params
    seed = [config.seed, run_index] if seed is None else seed
    rng = np.random.default_rng(seed)
    LOGGER.info("Starting run %s of %r", run_index, config)

    tasks = OrderedDict(
        (agent.agent_id, agent.initial_task()) for agent in config.agents
    )
    shapes = {agent.agent_id: agent.shape for agent in config.agents}
    states = OrderedDict()
    for agent in config.agents:
        pose = sample_start_pose(
            semantic_map.polygon(agent.route[0]), agent.shape, list(states.values()), rng
        )
        states[agent.agent_id] = np.asarray(pose, dtype=float)

    record = RunRecord(
        run_index, seed, config.mode.value, config.agent_ids, map_ref=config.map_ref
    )
    _record_states(record, 0, states, tasks)
    for agent_id, task in tasks.items():
        if task.completed:
            record.completion_steps[agent_id] = 0

    boundaries = [
        (boundary_id, semantic_map.polygon(boundary_id))
        for boundary_id in semantic_map.boundaries
    ]
    integrator = get_integrator(config.plant_integrator)
    h = params.control_period / config.plant_substeps
    shift = params.warm_start_shift

    step = 0
    reconfigure = True
    flocks = None
    elements = {}
    solutions = {}
    predictions = {}
    previous_limit = False
    full_collision = False
    min_agent = np.inf
    min_wall = np.inf

    while not all(task.completed for task in tasks.values()):
        if step >= config.max_steps:
            record.failure = INFEASIBLE
            record.failure_reason = "step_limit"
            break

        start = _time.perf_counter() if reconfigure else None
        if reconfigure:
            flocks = config.mode.flocks(list(tasks.values()), params.n_ha)
            elements = {
                agent_id: relevant_elements(
                    semantic_map, task.route, task.mode, params.n_h
                )
                for agent_id, task in tasks.items()
            }
        problems = [
            build_problem(
                flock,
                tasks,
                semantic_map,
                params,
                states,
                prev_solution=solutions.get(flock),
                elements=elements,
                predictions=predictions,
                shift=shift,
            )
            for flock in flocks
        ]
        if reconfigure:
            record.config_times.append([step, _time.perf_counter() - start])
            LOGGER.debug("Step %s: flocks %s", step, flocks.flocks)
            reconfigure = False
        record.flock_census.append(flocks.sizes)

        outcomes = _solve_flocks(problems, params, config.parallel_flocks)
        record.mpc_times.append(max(outcome.wall_time for outcome in outcomes))
        solutions = {}
        for problem, outcome in zip(problems, outcomes):
            record.status_counts[outcome.status] = (
                record.status_counts.get(outcome.status, 0) + 1
            )
            solution = FlockSolution.from_outcome(problem, outcome)
            solutions[problem.agent_ids] = solution
            predictions.update(solution.states)

        statuses = {outcome.status for outcome in outcomes}
        if SOLVER_INFEASIBLE in statuses:
            record.failure = INFEASIBLE
            record.failure_reason = "solver"
            break
        if ITERATION_LIMIT in statuses:
            if previous_limit:
                record.failure = INFEASIBLE
                record.failure_reason = "iteration_limit"
                break
            previous_limit = True
        else:
            previous_limit = False

        inputs = {}
        for solution in solutions.values():
            for agent_id in solution.agent_ids:
                inputs[agent_id] = tasks[agent_id].limits.clip_input(
                    solution.first_input(agent_id)
                )

        for substep in range(config.plant_substeps):
            for agent_id in states:
                state = np.asarray(integrator(states[agent_id], inputs[agent_id], h))
                state[3] = tasks[agent_id].limits.clip_velocity(state[3])
                states[agent_id] = state
            overlaps, agent_gap, wall_gap = _check_collisions(
                states, shapes, boundaries
            )
            min_agent = min(min_agent, agent_gap)
            min_wall = min(min_wall, wall_gap)
            for kind, ids, overlap in overlaps:
                severity = MINOR if overlap < naming.MINOR_COLLISION_OVERLAP else FULL
                record.collisions.append(
                    OrderedDict(
                        [
                            ("step", step),
                            ("substep", substep),
                            ("kind", kind),
                            ("ids", ids),
                            ("overlap", overlap),
                            ("severity", severity),
                        ]
                    )
                )
                if severity == FULL:
                    full_collision = True
                    if record.failure is None:
                        record.failure = COLLISION
                        record.failure_reason = kind
                    LOGGER.error(
                        "Run %s step %s: collision %s %s, overlap %.3g m",
                        run_index,
                        step,
                        kind,
                        ids,
                        overlap,
                    )
                else:
                    LOGGER.warning(
                        "Run %s step %s: minor collision %s %s, overlap %.3g m",
                        run_index,
                        step,
                        kind,
                        ids,
                        overlap,
                    )
            if full_collision:
                break

        step += 1
        _record_states(record, step, states, tasks)
        if full_collision:
            break

        for agent_id, task in list(tasks.items()):
            new_mode = check_event(task, states[agent_id][:2], semantic_map)
            if new_mode is None:
                continue
            tasks[agent_id] = task.advance()
            record.mode_changes.append([step, agent_id, new_mode])
            reconfigure = True
            LOGGER.debug("Step %s: agent %s entered mode %s", step, agent_id, new_mode)
            if tasks[agent_id].completed:
                record.completion_steps[agent_id] = step

    if record.failure is None and record.collisions:
        record.failure = COLLISION
        record.failure_reason = record.collisions[0]["kind"]
    record.steps = step
    record.min_agent_clearance = None if np.isinf(min_agent) else float(min_agent)
    record.min_wall_clearance = None if np.isinf(min_wall) else float(min_wall)
    if record.failure is None:
        LOGGER.info("Run %s completed after %s steps", run_index, record.completion_step)
    else:
        LOGGER.error(
            "Run %s failed after %s steps: %s (%s)",
            run_index,
            step,
            record.failure,
            record.failure_reason,
        )
    return record
