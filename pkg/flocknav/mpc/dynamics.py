# -*- coding: utf-8 -*-
"""
Kinematic unicycle model shared by the predictor and the simulated plant.

The state is ``(x, y, theta, v)``, the input ``(a, omega)``.
"""

from collections import namedtuple

import numpy as np

from flocknav.core import naming

AgentState = namedtuple("AgentState", ["x", "y", "theta", "v"])
ControlInput = namedtuple("ControlInput", ["a", "omega"])


def unicycle_rhs(state, control):
    """
    Time derivative of the unicycle state (vectorized over leading axes).
    """
    state = np.asarray(state, dtype=float)
    control = np.asarray(control, dtype=float)
    theta = state[..., 2]
    v = state[..., 3]
    return np.stack(
        [v * np.cos(theta), v * np.sin(theta), control[..., 1], control[..., 0]],
        axis=-1,
    )


def dynamics_step(state, control, dt):
    """
    Forward Euler step of the unicycle.

    Parameters
    ----------
    state: AgentState
    control: ControlInput
    dt: float

    Returns
    -------
    AgentState
    """
    if not dt > 0:
        raise ValueError("`dt` must be positive, got {}".format(dt))
    x = np.asarray(state, dtype=float)
    return AgentState(*(x + dt * unicycle_rhs(x, control)))


def rk4_step(state, control, dt):
    """
    Classic Runge-Kutta step with the input held constant.
    """
    if not dt > 0:
        raise ValueError("`dt` must be positive, got {}".format(dt))
    x = np.asarray(state, dtype=float)
    k1 = unicycle_rhs(x, control)
    k2 = unicycle_rhs(x + 0.5 * dt * k1, control)
    k3 = unicycle_rhs(x + 0.5 * dt * k2, control)
    k4 = unicycle_rhs(x + dt * k3, control)
    return AgentState(*(x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)))


_INTEGRATORS = {"euler": dynamics_step, "rk4": rk4_step}


def get_integrator(name):
    try:
        return _INTEGRATORS[name]
    except KeyError:
        raise ValueError(
            "Unknown integrator {!r}, expected one of {}".format(
                name, naming.PLANT_INTEGRATORS
            )
        )


def rollout(state, controls, dt, integrator="euler", substeps=1):
    """
    Integrate a sequence of inputs, each held for ``dt``.

    Returns
    -------
    states: numpy.ndarray
        Shape ``(len(controls) + 1, 4)``, starting with ``state``.
    """
    step = get_integrator(integrator)
    h = dt / substeps
    states = [AgentState(*np.asarray(state, dtype=float))]
    for control in controls:
        current = states[-1]
        for _ in range(substeps):
            current = step(current, control, h)
        states.append(current)
    return np.asarray(states, dtype=float)
