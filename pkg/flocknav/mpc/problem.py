# -*- coding: utf-8 -*-
"""
Assembly of the nonlinear program of one flock.

Decision vector layout, per agent in flock order::

    states  X   (n_t + 1, 4)   x, y, theta, v
    inputs  U   (n_t, 2)       a, omega
    planes  H   (W, 3)         a_x, a_y, b for every wall
    slacks  S   (W, n_t + 1)   soft wall constraints

followed by the slacks of the soft agent-agent constraints, ``(P, n_t + 1)``
for ``P`` agent pairs. Equality constraints are the initial condition and the
Euler dynamics, inequality constraints are all written as ``c(z) >= 0``.
"""

import itertools
import logging
from collections import OrderedDict

import numpy as np
import scipy.sparse as sp

from flocknav.core import naming
from flocknav.core.errors import ProblemDimensionError
from flocknav.core.semantic_map import relevant_elements
from flocknav.mpc.dynamics import unicycle_rhs
from flocknav.mpc.warm_start import warm_start
from flocknav.mpc.weights import update_objective_weights

_logger = logging.getLogger(__name__)

INEQUALITY_GROUPS = (
    "vertex",
    "wall_hard",
    "norm",
    "wall_soft",
    "pair_hard",
    "pair_soft",
)


class AgentBlock(object):
    """
    Variables and constraint data of one agent within a flock problem.

    Parameters
    ----------
    task: AgentTask
    state: array-like
        Current state ``(x, y, theta, v)``.
    elements: RelevantElements
    weights: numpy.ndarray
        Weight of every objective of ``elements``.
    offset: int
        Index of the first variable of the agent.
    n_t: int
        Prediction horizon.
    """

    def __init__(self, task, state, elements, weights, offset, n_t):
        self.task = task
        self.agent_id = task.agent_id
        self.shape = task.shape
        self.limits = task.limits
        self.x0 = np.asarray(state, dtype=float)
        if self.x0.shape != (4,):
            raise ValueError(
                "State of agent `{}` needs 4 entries, got {}".format(
                    self.agent_id, self.x0.shape
                )
            )
        self.elements = elements
        self.weights = np.asarray(weights, dtype=float)
        if len(self.weights) != len(elements.objectives):
            raise ValueError(
                "Got {} objective weights for {} objectives".format(
                    len(self.weights), len(elements.objectives)
                )
            )
        self.wall_ids = list(elements.walls)
        self.n_t = n_t
        self.n_knots = n_t + 1
        self.x_offset = offset
        self.u_offset = self.x_offset + 4 * self.n_knots
        self.h_offset = self.u_offset + 2 * n_t
        self.s_offset = self.h_offset + 3 * self.n_walls
        self.size = self.s_offset + self.n_walls * self.n_knots - offset

    def __repr__(self):
        return "AgentBlock(agent_id={!r}, walls={})".format(self.agent_id, self.n_walls)

    @property
    def n_walls(self):
        return len(self.wall_ids)

    def state_index(self):
        return self.x_offset + np.arange(4 * self.n_knots).reshape(self.n_knots, 4)

    def input_index(self):
        return self.u_offset + np.arange(2 * self.n_t).reshape(self.n_t, 2)

    def plane_index(self):
        return self.h_offset + np.arange(3 * self.n_walls, dtype=int).reshape(-1, 3)

    def slack_index(self):
        return self.s_offset + np.arange(
            self.n_walls * self.n_knots, dtype=int
        ).reshape(-1, self.n_knots)

    def wall_vertices(self, wall_id):
        return np.asarray(self.elements.walls[wall_id], dtype=float)


def _int_array(values, columns=None):
    arr = np.asarray(values, dtype=int)
    if columns is not None:
        arr = arr.reshape(-1, columns)
    return arr


class MpcProblem(object):
    """
    The nonlinear program of one flock.

    Parameters
    ----------
    blocks: list of AgentBlock
        Agents in flock order, with consecutive variable offsets starting at 0.
    params: MpcParams
    """

    def __init__(self, blocks, params):
        if not blocks:
            raise ValueError("A problem needs at least one agent")
        self.blocks = list(blocks)
        self.params = params
        self.n_t = params.n_t
        self.n_knots = params.n_t + 1
        self.pairs = list(itertools.combinations(range(len(self.blocks)), 2))
        self.pair_offset = sum(block.size for block in self.blocks)
        self.n_vars = self.pair_offset + len(self.pairs) * self.n_knots
        self._build_index()
        self.lb, self.ub = self._build_bounds()
        self.n_eq = 4 * len(self.blocks) * self.n_knots
        self.n_ineq = sum(self._group_sizes().values())
        self.z0 = None
        self.eq_multipliers = None
        self.ineq_multipliers = None
        self.penalty = None

    def __repr__(self):
        return "MpcProblem(agents={}, n_vars={}, n_eq={}, n_ineq={})".format(
            self.agent_ids, self.n_vars, self.n_eq, self.n_ineq
        )

    @property
    def agent_ids(self):
        return tuple(block.agent_id for block in self.blocks)

    @property
    def signature(self):
        """
        Identifies the structure of the problem; multipliers of two problems
        with equal signatures refer to the same constraints.
        """
        return (
            self.agent_ids,
            tuple(tuple(block.wall_ids) for block in self.blocks),
            self.n_t,
        )

    def block(self, agent_id):
        for block in self.blocks:
            if block.agent_id == agent_id:
                return block
        raise KeyError("Agent `{}` is not part of this problem".format(agent_id))

    def _build_index(self):
        K = self.n_knots
        self._xidx = np.stack([block.state_index() for block in self.blocks])
        self._uidx = np.stack([block.input_index() for block in self.blocks])
        self._x0 = np.stack([block.x0 for block in self.blocks])

        wall_agent, planes, slacks, r_v, r_soft = [], [], [], [], []
        vertex_wall, vertex_xy = [], []
        for i, block in enumerate(self.blocks):
            plane_index = block.plane_index()
            slack_index = block.slack_index()
            for w, wall_id in enumerate(block.wall_ids):
                for vertex in block.wall_vertices(wall_id):
                    vertex_wall.append(len(wall_agent))
                    vertex_xy.append(vertex)
                wall_agent.append(i)
                planes.append(plane_index[w])
                slacks.append(slack_index[w])
                r_v.append(block.shape.r_v)
                r_soft.append(block.shape.r_soft)
        self._wall_agent = _int_array(wall_agent)
        self._plane_idx = _int_array(planes, 3)
        self._wall_slack_idx = _int_array(slacks, K)
        self._wall_px = self._xidx[self._wall_agent, :, 0]
        self._wall_py = self._xidx[self._wall_agent, :, 1]
        self._wall_r_v = np.asarray(r_v, dtype=float)
        self._wall_r_soft = np.asarray(r_soft, dtype=float)
        self._vertex_wall = _int_array(vertex_wall)
        self._vertex_xy = np.asarray(vertex_xy, dtype=float).reshape(-1, 2)

        pi = _int_array([i for i, _ in self.pairs])
        pj = _int_array([j for _, j in self.pairs])
        self._pair_ix = self._xidx[pi, :, 0]
        self._pair_iy = self._xidx[pi, :, 1]
        self._pair_jx = self._xidx[pj, :, 0]
        self._pair_jy = self._xidx[pj, :, 1]
        radii = np.array([block.shape.r_v for block in self.blocks])
        soft_radii = np.array([block.shape.r_soft for block in self.blocks])
        self._pair_r2 = (radii[pi] + radii[pj]) ** 2
        self._pair_rs2 = (soft_radii[pi] + soft_radii[pj]) ** 2
        self._pair_slack_idx = self.pair_offset + np.arange(
            len(self.pairs) * K, dtype=int
        ).reshape(-1, K)
        self._slack_idx = np.concatenate(
            [self._wall_slack_idx.ravel(), self._pair_slack_idx.ravel()]
        )

        obj_agent, obj_normal, obj_offset, obj_weight = [], [], [], []
        for i, block in enumerate(self.blocks):
            for weight, segment in zip(block.weights, block.elements.objectives):
                if weight <= 0:
                    continue
                normal = segment.normal
                obj_agent.append(i)
                obj_normal.append(normal)
                obj_offset.append(float(normal.dot(segment.a)))
                obj_weight.append(weight)
        obj_agent = _int_array(obj_agent)
        self._obj_px = self._xidx[obj_agent, :, 0]
        self._obj_py = self._xidx[obj_agent, :, 1]
        self._obj_normal = np.asarray(obj_normal, dtype=float).reshape(-1, 2)
        self._obj_offset = np.asarray(obj_offset, dtype=float)
        self._obj_weight = np.asarray(obj_weight, dtype=float)

    def _build_bounds(self):
        lb = np.full(self.n_vars, -np.inf)
        ub = np.full(self.n_vars, np.inf)
        for i, block in enumerate(self.blocks):
            limits = block.limits
            lb[self._xidx[i, 1:, 3]] = limits.v_min
            ub[self._xidx[i, 1:, 3]] = limits.v_max
            lb[self._xidx[i, 0, :]] = block.x0
            ub[self._xidx[i, 0, :]] = block.x0
            lb[self._uidx[i, :, 0]] = limits.a_min
            ub[self._uidx[i, :, 0]] = limits.a_max
            lb[self._uidx[i, :, 1]] = limits.omega_min
            ub[self._uidx[i, :, 1]] = limits.omega_max
        lb[self._plane_idx[:, :2]] = -1.0
        ub[self._plane_idx[:, :2]] = 1.0
        lb[self._slack_idx] = 0.0
        return lb, ub

    def _group_sizes(self):
        K = self.n_knots
        n_walls = len(self._wall_agent)
        n_pairs = len(self.pairs)
        return OrderedDict(
            [
                ("vertex", len(self._vertex_wall)),
                ("wall_hard", n_walls * K),
                ("norm", n_walls),
                ("wall_soft", n_walls * K),
                ("pair_hard", n_pairs * K),
                ("pair_soft", n_pairs * K),
            ]
        )

    def group_slices(self):
        """
        Slice of every inequality group within :meth:`ineq_constraints`.
        """
        slices = OrderedDict()
        start = 0
        for name, size in self._group_sizes().items():
            slices[name] = slice(start, start + size)
            start += size
        return slices

    def census(self):
        """
        Counts of variables and constraints by kind.
        """
        K = self.n_knots
        n_agents = len(self.blocks)
        result = OrderedDict(
            [
                ("agents", n_agents),
                ("pairs", len(self.pairs)),
                ("walls", len(self._wall_agent)),
                ("variables", self.n_vars),
                ("states", 4 * K * n_agents),
                ("inputs", 2 * self.n_t * n_agents),
                ("planes", 3 * len(self._wall_agent)),
                ("wall_slacks", len(self._wall_agent) * K),
                ("pair_slacks", len(self.pairs) * K),
                ("initial", 4 * n_agents),
                ("dynamics", 4 * self.n_t * n_agents),
            ]
        )
        result.update(self._group_sizes())
        return result

    def check_vector(self, z):
        z = np.asarray(z, dtype=float)
        if z.shape != (self.n_vars,):
            raise ProblemDimensionError(
                "Decision vector has shape {}, the problem needs ({},)".format(
                    z.shape, self.n_vars
                )
            )
        return z

    def objective(self, z):
        z = self.check_vector(z)
        U = z[self._uidx]
        stage = float(np.sum(np.matmul(U, self.params.R) * U))
        d = self._objective_distances(z)
        progress = float(
            np.sum(self._obj_weight[:, None] * (self.params.Q * d ** 2 + self.params.q * d))
        )
        soft = self.params.soft_penalty * float(np.sum(z[self._slack_idx]))
        return stage + progress + soft

    def _objective_distances(self, z):
        return (
            self._obj_normal[:, 0:1] * z[self._obj_px]
            + self._obj_normal[:, 1:2] * z[self._obj_py]
            - self._obj_offset[:, None]
        )

    def gradient(self, z):
        z = self.check_vector(z)
        grad = np.zeros(self.n_vars)
        R = self.params.R
        grad[self._uidx] = np.matmul(z[self._uidx], R + R.T)
        d = self._objective_distances(z)
        coef = self._obj_weight[:, None] * (2.0 * self.params.Q * d + self.params.q)
        np.add.at(grad, self._obj_px, coef * self._obj_normal[:, 0:1])
        np.add.at(grad, self._obj_py, coef * self._obj_normal[:, 1:2])
        grad[self._slack_idx] += self.params.soft_penalty
        return grad

    def eq_constraints(self, z):
        z = self.check_vector(z)
        X = z[self._xidx]
        U = z[self._uidx]
        initial = X[:, 0, :] - self._x0
        dynamics = X[:, 1:, :] - X[:, :-1, :] - self.params.dt * unicycle_rhs(
            X[:, :-1, :], U
        )
        return np.concatenate([initial.ravel(), dynamics.ravel()])

    def eq_jacobian(self, z):
        z = self.check_vector(z)
        dt = self.params.dt
        n_agents = len(self.blocks)
        X = z[self._xidx]
        theta = X[:, :-1, 2]
        v = X[:, :-1, 3]
        xidx = self._xidx
        rows = 4 * n_agents + np.arange(4 * n_agents * self.n_t).reshape(
            n_agents, self.n_t, 4
        )
        entries = [
            (np.arange(4 * n_agents), xidx[:, 0, :].ravel(), 1.0),
            (rows, xidx[:, 1:, :], 1.0),
            (rows, xidx[:, :-1, :], -1.0),
            (rows[..., 0], xidx[:, :-1, 2], dt * v * np.sin(theta)),
            (rows[..., 0], xidx[:, :-1, 3], -dt * np.cos(theta)),
            (rows[..., 1], xidx[:, :-1, 2], -dt * v * np.cos(theta)),
            (rows[..., 1], xidx[:, :-1, 3], -dt * np.sin(theta)),
            (rows[..., 2], self._uidx[:, :, 1], -dt),
            (rows[..., 3], self._uidx[:, :, 0], -dt),
        ]
        return self._assemble(entries, self.n_eq)

    def _planes(self, z):
        H = z[self._plane_idx]
        return H[:, 0], H[:, 1], H[:, 2]

    def ineq_constraints(self, z):
        z = self.check_vector(z)
        ax, ay, b = self._planes(z)
        vw = self._vertex_wall
        vertex = (
            self._vertex_xy[:, 0] * ax[vw] + self._vertex_xy[:, 1] * ay[vw] - b[vw]
        )
        separation = (
            b[:, None] - ax[:, None] * z[self._wall_px] - ay[:, None] * z[self._wall_py]
        )
        wall_hard = separation - self._wall_r_v[:, None]
        norm = 1.0 - ax ** 2 - ay ** 2
        wall_soft = separation - self._wall_r_soft[:, None] + z[self._wall_slack_idx]
        dx = z[self._pair_ix] - z[self._pair_jx]
        dy = z[self._pair_iy] - z[self._pair_jy]
        d2 = dx ** 2 + dy ** 2
        pair_hard = d2 - self._pair_r2[:, None]
        pair_soft = d2 - self._pair_rs2[:, None] + z[self._pair_slack_idx]
        return np.concatenate(
            [
                vertex,
                wall_hard.ravel(),
                norm,
                wall_soft.ravel(),
                pair_hard.ravel(),
                pair_soft.ravel(),
            ]
        )

    def ineq_jacobian(self, z):
        z = self.check_vector(z)
        slices = self.group_slices()
        K = self.n_knots
        ax, ay, b = self._planes(z)
        plane = self._plane_idx
        vw = self._vertex_wall
        n_walls = len(self._wall_agent)

        def rows(name, width=None):
            r = np.arange(slices[name].start, slices[name].stop)
            return r if width is None else r.reshape(-1, width)

        vertex_rows = rows("vertex")
        entries = [
            (vertex_rows, plane[vw, 0], self._vertex_xy[:, 0]),
            (vertex_rows, plane[vw, 1], self._vertex_xy[:, 1]),
            (vertex_rows, plane[vw, 2], -1.0),
        ]
        for name in ("wall_hard", "wall_soft"):
            r = rows(name, K)
            entries.extend(
                [
                    (r, plane[:, 0:1], -z[self._wall_px]),
                    (r, plane[:, 1:2], -z[self._wall_py]),
                    (r, plane[:, 2:3], 1.0),
                    (r, self._wall_px, -np.broadcast_to(ax[:, None], (n_walls, K))),
                    (r, self._wall_py, -np.broadcast_to(ay[:, None], (n_walls, K))),
                ]
            )
        entries.append((rows("wall_soft", K), self._wall_slack_idx, 1.0))
        norm_rows = rows("norm")
        entries.extend(
            [(norm_rows, plane[:, 0], -2.0 * ax), (norm_rows, plane[:, 1], -2.0 * ay)]
        )
        dx = z[self._pair_ix] - z[self._pair_jx]
        dy = z[self._pair_iy] - z[self._pair_jy]
        for name in ("pair_hard", "pair_soft"):
            r = rows(name, K)
            entries.extend(
                [
                    (r, self._pair_ix, 2.0 * dx),
                    (r, self._pair_iy, 2.0 * dy),
                    (r, self._pair_jx, -2.0 * dx),
                    (r, self._pair_jy, -2.0 * dy),
                ]
            )
        entries.append((rows("pair_soft", K), self._pair_slack_idx, 1.0))
        return self._assemble(entries, self.n_ineq)

    def _assemble(self, entries, n_rows):
        all_rows, all_cols, all_vals = [], [], []
        for r, c, v in entries:
            r, c, v = np.broadcast_arrays(
                np.asarray(r), np.asarray(c), np.asarray(v, dtype=float)
            )
            all_rows.append(r.ravel())
            all_cols.append(c.ravel())
            all_vals.append(v.ravel())
        return sp.csr_matrix(
            (
                np.concatenate(all_vals),
                (np.concatenate(all_rows), np.concatenate(all_cols)),
            ),
            shape=(n_rows, self.n_vars),
        )

    def violation(self, z):
        """
        Largest violation of equalities, inequalities and bounds at ``z``.
        """
        z = self.check_vector(z)
        parts = [0.0, np.max(np.abs(self.eq_constraints(z)))]
        g = self.ineq_constraints(z)
        if g.size:
            parts.append(np.max(-g))
        parts.append(np.max(self.lb - z))
        parts.append(np.max(z - self.ub))
        return float(max(parts))

    def unpack(self, z):
        """
        Split a decision vector into per agent trajectories.

        Returns
        -------
        OrderedDict
            agent id -> dict with ``states``, ``inputs``, ``planes`` (wall id ->
            ``(a_x, a_y, b)``) and ``slacks``.
        """
        z = self.check_vector(z)
        result = OrderedDict()
        for block in self.blocks:
            planes = z[block.plane_index()]
            result[block.agent_id] = {
                "states": z[block.state_index()],
                "inputs": z[block.input_index()],
                "planes": OrderedDict(
                    (wall_id, planes[w]) for w, wall_id in enumerate(block.wall_ids)
                ),
                "slacks": z[block.slack_index()],
            }
        return result

    def pair_slack_index(self):
        """
        Indices of the soft agent-agent slacks, shape ``(P, n_t + 1)``.
        """
        return self._pair_slack_idx


def _as_mapping(tasks):
    if isinstance(tasks, dict):
        return tasks
    return OrderedDict((task.agent_id, task) for task in tasks)


def build_problem(
    flock,
    tasks,
    semantic_map,
    params,
    states,
    prev_solution=None,
    elements=None,
    predictions=None,
    shift=1.0,
):
    """
    Assemble and warm start the problem of one flock.

    Parameters
    ----------
    flock: iterable of str
        Agent ids of the flock; they are ordered by id.
    tasks: dict or list of AgentTask
    semantic_map: SemanticMap
    params: MpcParams
    states: dict
        Agent id -> current state ``(x, y, theta, v)``.
    prev_solution: FlockSolution, optional
        Solution of the previous control step for this flock.
    elements: dict, optional
        Agent id -> RelevantElements; computed from the map where missing.
    predictions: dict, optional
        Agent id -> previous predicted states used to gate the objective
        weights. Falls back to the states of ``prev_solution``.
    shift: float
        Prediction steps elapsed since ``prev_solution`` was computed.

    Returns
    -------
    problem: MpcProblem
    """
    tasks = _as_mapping(tasks)
    elements = dict(elements or {})
    predictions = dict(predictions or {})
    if prev_solution is not None:
        for agent_id, prev_states in prev_solution.states.items():
            predictions.setdefault(agent_id, prev_states)

    blocks = []
    offset = 0
    for agent_id in sorted(flock):
        task = tasks[agent_id]
        if agent_id not in elements:
            elements[agent_id] = relevant_elements(
                semantic_map, task.route, task.mode, params.n_h
            )
        agent_elements = elements[agent_id]
        weights = update_objective_weights(
            predictions.get(agent_id), agent_elements, semantic_map
        )
        block = AgentBlock(
            task, states[agent_id], agent_elements, weights, offset, params.n_t
        )
        blocks.append(block)
        offset += block.size

    problem = MpcProblem(blocks, params)
    problem.z0 = warm_start(problem, prev_solution, shift=shift)
    if prev_solution is not None and prev_solution.signature == problem.signature:
        problem.eq_multipliers = prev_solution.eq_multipliers
        problem.ineq_multipliers = prev_solution.ineq_multipliers
        if prev_solution.penalty is not None:
            problem.penalty = min(prev_solution.penalty, naming.MAX_WARM_PENALTY)
    _logger.debug("Built %r", problem)
    return problem
