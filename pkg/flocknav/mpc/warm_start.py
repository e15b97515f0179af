# -*- coding: utf-8 -*-
"""
Initial guesses for the receding horizon solves.
"""

import logging
from collections import OrderedDict

import numpy as np

from flocknav.core.geometry import closest_point_on_hull

_logger = logging.getLogger(__name__)


class FlockSolution(object):
    """
    Solution of one flock problem, kept to warm start the next control step.

    Parameters
    ----------
    agent_ids: tuple of str
    n_t: int
    states: dict
        Agent id -> predicted states, shape ``(n_t + 1, 4)``.
    inputs: dict
        Agent id -> predicted inputs, shape ``(n_t, 2)``.
    planes: dict
        Agent id -> dict of wall id -> ``(a_x, a_y, b)``.
    signature: tuple
        :attr:`MpcProblem.signature` of the solved problem.
    eq_multipliers, ineq_multipliers: numpy.ndarray, optional
    penalty: float, optional
    """

    def __init__(
        self,
        agent_ids,
        n_t,
        states,
        inputs,
        planes,
        signature=None,
        eq_multipliers=None,
        ineq_multipliers=None,
        penalty=None,
    ):
        self.agent_ids = tuple(agent_ids)
        self.n_t = n_t
        self.states = states
        self.inputs = inputs
        self.planes = planes
        self.signature = signature
        self.eq_multipliers = eq_multipliers
        self.ineq_multipliers = ineq_multipliers
        self.penalty = penalty

    def __repr__(self):
        return "FlockSolution(agent_ids={}, n_t={})".format(self.agent_ids, self.n_t)

    @staticmethod
    def from_outcome(problem, outcome):
        unpacked = problem.unpack(outcome.x)
        return FlockSolution(
            agent_ids=problem.agent_ids,
            n_t=problem.n_t,
            states=OrderedDict((k, v["states"]) for k, v in unpacked.items()),
            inputs=OrderedDict((k, v["inputs"]) for k, v in unpacked.items()),
            planes=OrderedDict((k, v["planes"]) for k, v in unpacked.items()),
            signature=problem.signature,
            eq_multipliers=outcome.eq_multipliers,
            ineq_multipliers=outcome.ineq_multipliers,
            penalty=outcome.penalty,
        )

    def first_input(self, agent_id):
        return self.inputs[agent_id][0]


def shift_trajectory(values, shift):
    """
    Sample ``values`` at ``k + shift`` for every row ``k``.

    Rows are linearly interpolated; beyond the last row the last row is repeated.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    t = np.minimum(np.arange(n) + float(shift), n - 1)
    lo = np.floor(t).astype(int)
    hi = np.minimum(lo + 1, n - 1)
    frac = (t - lo)[:, None]
    return values[lo] * (1.0 - frac) + values[hi] * frac


def cold_plane(position, vertices, radius):
    """
    Separating plane between an agent at ``position`` and a wall.

    ``a`` points from the agent towards the closest point of the wall hull,
    ``b`` lies halfway, moved to clear ``radius`` where possible without
    cutting the wall.
    """
    p = np.asarray(position, dtype=float)
    vertices = np.asarray(vertices, dtype=float)
    q = closest_point_on_hull(p, vertices)
    diff = q - p
    dist = np.hypot(*diff)
    if dist <= 1e-9:
        diff = vertices.mean(axis=0) - p
        dist = np.hypot(*diff)
        if dist <= 1e-9:
            diff = np.array([1.0, 0.0])
            dist = 1.0
    a = diff / dist
    support = float(np.min(vertices.dot(a)))
    b = min(max(float(a.dot(p)) + radius, float(a.dot(p + q)) / 2.0), support)
    return np.array([a[0], a[1], b])


def warm_start(problem, prev_solution=None, shift=1.0):
    """
    Initial decision vector of ``problem``.

    If ``prev_solution`` belongs to a flock of the same agents, its states and
    inputs are shifted by ``shift`` prediction steps and its planes are reused
    by wall id. Otherwise the current state is held over the horizon with zero
    inputs. Walls without a previous plane get :func:`cold_plane`.

    Slacks are never zero-initialized, not even on a cold start: every slack
    is set to the smallest nonnegative value satisfying its soft constraint at
    the initial states and planes, so ``z0`` violates no soft constraint.

    Returns
    -------
    z0: numpy.ndarray
    """
    K = problem.n_knots
    z = np.zeros(problem.n_vars)
    reuse = (
        prev_solution is not None
        and prev_solution.agent_ids == problem.agent_ids
        and prev_solution.n_t == problem.n_t
    )
    if prev_solution is not None and not reuse:
        _logger.debug(
            "Cold start for flock %s, previous flock was %s",
            problem.agent_ids,
            prev_solution.agent_ids,
        )
    for block in problem.blocks:
        if reuse:
            X = shift_trajectory(prev_solution.states[block.agent_id], shift)
            U = shift_trajectory(prev_solution.inputs[block.agent_id], shift)
            X[0] = block.x0
            prev_planes = prev_solution.planes.get(block.agent_id, {})
        else:
            X = np.tile(block.x0, (K, 1))
            U = np.zeros((problem.n_t, 2))
            prev_planes = {}
        z[block.state_index()] = X
        z[block.input_index()] = U

        positions = X[:, :2]
        plane_index = block.plane_index()
        slack_index = block.slack_index()
        for w, wall_id in enumerate(block.wall_ids):
            plane = prev_planes.get(wall_id)
            if plane is None:
                plane = cold_plane(
                    block.x0[:2], block.wall_vertices(wall_id), block.shape.r_soft
                )
            else:
                plane = np.array(plane, dtype=float)
                norm = np.hypot(plane[0], plane[1])
                if norm > 1.0:
                    plane[:2] /= norm
            z[plane_index[w]] = plane
            separation = plane[2] - positions.dot(plane[:2])
            z[slack_index[w]] = np.maximum(0.0, block.shape.r_soft - separation)

    for p, (i, j) in enumerate(problem.pairs):
        bi = problem.blocks[i]
        bj = problem.blocks[j]
        delta = z[bi.state_index()][:, :2] - z[bj.state_index()][:, :2]
        d2 = np.sum(delta ** 2, axis=1)
        r2 = (bi.shape.r_soft + bj.shape.r_soft) ** 2
        z[problem.pair_slack_index()[p]] = np.maximum(0.0, r2 - d2)

    return np.clip(z, problem.lb, problem.ub)
