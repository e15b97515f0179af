# -*- coding: utf-8 -*-
"""
Augmented Lagrangian solver for :class:`~flocknav.mpc.problem.MpcProblem`.

Equalities ``h(z) = 0`` and inequalities ``g(z) >= 0`` are moved into the
objective with multipliers and a quadratic penalty; variable bounds stay
explicit and every subproblem is solved with L-BFGS-B. The multipliers are
updated after every subproblem and the penalty grows only when feasibility
and complementarity did not improve enough over the previous iteration. The
subproblem tolerance starts at the initial stationarity, at most 0.1, and is
tightened with every outer iteration until it sits one decade below the
requested tolerance.
"""

import logging

import numpy as np
from scipy.optimize import Bounds, minimize

from flocknav.core import _time, naming
from flocknav.core.errors import ProblemDimensionError

LOGGER = logging.getLogger(__name__)

OPTIMAL = "Optimal"
ITERATION_LIMIT = "IterationLimit"
INFEASIBLE = "Infeasible"
STATUSES = (OPTIMAL, ITERATION_LIMIT, INFEASIBLE)

_PENALTY_GROWTH = 10.0
# the penalty grows unless infeasibility shrinks by at least this factor
_PROGRESS_RATIO = 0.5
# relative violation decrease a window must achieve to count as progress
_STALL_IMPROVEMENT = 0.1
_INITIAL_INNER_TOLERANCE = 0.1
_INNER_TOLERANCE_DECREASE = 0.1
_INNER_MEMORY = 20
_MAX_MULTIPLIER = 1e10


class SolveOutcome(object):
    """
    Result of :func:`solve`.

    Attributes
    ----------
    status: str
        ``"Optimal"``, ``"IterationLimit"`` or ``"Infeasible"``.
    x: numpy.ndarray
        Final decision vector.
    objective: float
    violation: float
        Largest constraint or bound violation at ``x``.
    stationarity: float
        Projected Lagrangian gradient, relative to ``max(1, |grad f|)``.
    iterations: int
        Outer iterations.
    inner_iterations: int
        L-BFGS-B iterations summed over all subproblems.
    wall_time: float
        Seconds spent in :func:`solve`.
    eq_multipliers, ineq_multipliers: numpy.ndarray
    penalty: float
    """

    def __init__(
        self,
        status,
        x,
        objective,
        violation,
        stationarity,
        iterations,
        inner_iterations,
        wall_time,
        eq_multipliers,
        ineq_multipliers,
        penalty,
    ):
        if status not in STATUSES:
            raise ValueError("Unknown status {!r}".format(status))
        self.status = status
        self.x = x
        self.objective = objective
        self.violation = violation
        self.stationarity = stationarity
        self.iterations = iterations
        self.inner_iterations = inner_iterations
        self.wall_time = wall_time
        self.eq_multipliers = eq_multipliers
        self.ineq_multipliers = ineq_multipliers
        self.penalty = penalty

    def __repr__(self):
        return (
            "SolveOutcome(status={!r}, objective={:.6g}, violation={:.3g}, "
            "iterations={}, wall_time={:.3g})".format(
                self.status,
                self.objective,
                self.violation,
                self.iterations,
                self.wall_time,
            )
        )

    @property
    def optimal(self):
        return self.status == OPTIMAL


def _initial_multipliers(values, size, name):
    if values is None:
        return np.zeros(size)
    values = np.asarray(values, dtype=float)
    if values.shape != (size,):
        raise ProblemDimensionError(
            "{} multipliers have shape {}, the problem needs ({},)".format(
                name, values.shape, size
            )
        )
    return values.copy()


def _violation(h, g, z, lb, ub):
    parts = [0.0]
    if h.size:
        parts.append(np.max(np.abs(h)))
    if g.size:
        parts.append(np.max(-g))
    parts.append(np.max(lb - z))
    parts.append(np.max(z - ub))
    return float(max(parts))


def _stationarity(problem, z, lam_e, lam_i):
    """
    Projected gradient of the Lagrangian ``f - lam_e h - lam_i g`` at ``z``,
    relative to ``max(1, |grad f|)``.
    """
    grad_f = problem.gradient(z)
    grad_l = (
        grad_f
        - problem.eq_jacobian(z).T.dot(lam_e)
        - problem.ineq_jacobian(z).T.dot(lam_i)
    )
    projected = z - np.clip(z - grad_l, problem.lb, problem.ub)
    return float(np.max(np.abs(projected), initial=0.0)) / max(
        1.0, float(np.max(np.abs(grad_f), initial=0.0))
    )


def _infeasibility(h, g, lam_i, mu):
    # feasibility and complementarity together
    parts = [0.0]
    if h.size:
        parts.append(np.max(np.abs(h)))
    if g.size:
        parts.append(np.max(np.abs(np.minimum(g, lam_i / mu))))
    return float(max(parts))


def _stalled(history, window, threshold):
    """
    Whether the violation stayed above ``threshold`` and improved by less than
    ``_STALL_IMPROVEMENT`` over the last ``window`` iterations.
    """
    if len(history) <= window or history[-1] <= threshold:
        return False
    reference = min(history[:-window])
    return min(history[-window:]) > (1.0 - _STALL_IMPROVEMENT) * reference


def solve(
    problem,
    params=None,
    x0=None,
    eq_multipliers=None,
    ineq_multipliers=None,
    penalty=None,
):
    """
    Solve ``problem`` to a local optimum.

    Parameters
    ----------
    problem: MpcProblem
    params: MpcParams, optional
        Defaults to the parameters the problem was built with.
    x0: numpy.ndarray, optional
        Initial decision vector; defaults to ``problem.z0``.
    eq_multipliers, ineq_multipliers: numpy.ndarray, optional
        Initial multipliers; default to the ones stored on the problem, else zero.
    penalty: float, optional
        Initial penalty parameter.

    Returns
    -------
    outcome: SolveOutcome

    Raises
    ------
    ProblemDimensionError
        If ``x0`` or the multipliers do not match the problem.
    """
    params = params if params is not None else problem.params
    start = _time.perf_counter()
    if x0 is None:
        x0 = problem.z0
    if x0 is None:
        raise ValueError("The problem has no initial decision vector")
    z = np.clip(problem.check_vector(x0), problem.lb, problem.ub)
    if eq_multipliers is None:
        eq_multipliers = problem.eq_multipliers
    if ineq_multipliers is None:
        ineq_multipliers = problem.ineq_multipliers
    if penalty is None:
        penalty = problem.penalty
    lam_e = _initial_multipliers(eq_multipliers, problem.n_eq, "Equality")
    lam_i = np.maximum(
        _initial_multipliers(ineq_multipliers, problem.n_ineq, "Inequality"), 0.0
    )
    mu = float(penalty) if penalty is not None else naming.DEFAULT_INITIAL_PENALTY
    tol = params.tolerance
    # a start close to a KKT point begins with tight subproblems
    inner_tolerance = min(
        max(_stationarity(problem, z, lam_e, lam_i), 0.1 * tol),
        _INITIAL_INNER_TOLERANCE,
    )
    bounds = Bounds(problem.lb, problem.ub)

    def merit(z):
        h = problem.eq_constraints(z)
        g = problem.ineq_constraints(z)
        shifted = np.minimum(0.0, mu * g - lam_i)
        # psi(g) = -lam g + mu/2 g^2 while g <= lam / mu, constant beyond
        psi = np.where(
            mu * g <= lam_i,
            -lam_i * g + 0.5 * mu * g ** 2,
            -(lam_i ** 2) / (2.0 * mu),
        )
        value = (
            problem.objective(z) - lam_e.dot(h) + 0.5 * mu * h.dot(h) + np.sum(psi)
        )
        grad = (
            problem.gradient(z)
            + problem.eq_jacobian(z).T.dot(mu * h - lam_e)
            + problem.ineq_jacobian(z).T.dot(shifted)
        )
        return value, grad

    status = ITERATION_LIMIT
    history = []
    progress = np.inf
    inner_iterations = 0
    iteration = 0
    violation = np.inf
    stationarity = np.inf
    for iteration in range(1, params.max_iterations + 1):
        grad_scale = max(1.0, float(np.max(np.abs(problem.gradient(z)), initial=0.0)))
        result = minimize(
            merit,
            z,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={
                "maxiter": params.inner_max_iterations,
                "maxcor": _INNER_MEMORY,
                "gtol": inner_tolerance * grad_scale,
                # only the gradient test ends a subproblem early
                "ftol": np.finfo(float).eps,
            },
        )
        z = np.clip(result.x, problem.lb, problem.ub)
        inner_iterations += int(result.nit)

        h = problem.eq_constraints(z)
        g = problem.ineq_constraints(z)
        violation = _violation(h, g, z, problem.lb, problem.ub)
        lam_e = np.clip(lam_e - mu * h, -_MAX_MULTIPLIER, _MAX_MULTIPLIER)
        lam_i = np.clip(lam_i - mu * g, 0.0, _MAX_MULTIPLIER)
        stationarity = _stationarity(problem, z, lam_e, lam_i)
        if violation <= tol and stationarity <= tol:
            status = OPTIMAL
            break

        previous, progress = progress, _infeasibility(h, g, lam_i, mu)
        if progress > _PROGRESS_RATIO * previous:
            mu = min(mu * _PENALTY_GROWTH, naming.MAX_PENALTY)
        inner_tolerance = max(inner_tolerance * _INNER_TOLERANCE_DECREASE, 0.1 * tol)

        history.append(violation)
        if mu >= naming.MAX_PENALTY and _stalled(
            history, params.infeasibility_stall, params.infeasibility_threshold
        ):
            status = INFEASIBLE
            break

        if (
            params.max_cpu_time is not None
            and _time.perf_counter() - start >= params.max_cpu_time
        ):
            LOGGER.debug("Solve of %s hit the wall time cap", problem.agent_ids)
            break

    wall_time = max(0.0, _time.perf_counter() - start)
    outcome = SolveOutcome(
        status=status,
        x=z,
        objective=problem.objective(z),
        violation=violation,
        stationarity=stationarity,
        iterations=iteration,
        inner_iterations=inner_iterations,
        wall_time=wall_time,
        eq_multipliers=lam_e,
        ineq_multipliers=lam_i,
        penalty=mu,
    )
    if status == OPTIMAL:
        LOGGER.debug("Solved %s: %r", problem.agent_ids, outcome)
    else:
        LOGGER.warning("Solve of %s ended with %r", problem.agent_ids, outcome)
    return outcome
