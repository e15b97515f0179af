# -*- coding: utf-8 -*-
"""
Value objects holding the tunable parameters of agents and controllers.
"""

from collections import OrderedDict

import numpy as np

from flocknav.core import naming
from flocknav.core._mixins import CopyMixin
from flocknav.core.utils import as_matrix, ensure_count, ensure_positive


def _from_dict(cls, dct, converters=None):
    if dct is None:
        return cls()
    if not isinstance(dct, dict):
        raise TypeError(
            "{} expects a mapping, got {}".format(cls.__name__, type(dct).__name__)
        )
    known = cls._fields
    unknown = sorted(set(dct) - set(known))
    if unknown:
        raise ValueError(
            "Unknown {} keys: {}. Allowed keys are {}".format(
                cls.__name__, ", ".join(unknown), ", ".join(known)
            )
        )
    kwargs = dict(dct)
    for key, converter in (converters or {}).items():
        if key in kwargs and kwargs[key] is not None:
            kwargs[key] = converter(kwargs[key])
    return cls(**kwargs)


class _ParamsBase(CopyMixin):
    _fields = ()

    def to_dict(self):
        result = OrderedDict()
        for field in self._fields:
            value = getattr(self, field)
            if isinstance(value, np.ndarray):
                value = value.tolist()
            elif isinstance(value, tuple):
                value = list(value)
            result[field] = value
        return result

    @classmethod
    def from_dict(cls, dct):
        return _from_dict(cls, dct)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return "{}({})".format(
            type(self).__name__,
            ", ".join("{}={!r}".format(k, v) for k, v in self.to_dict().items()),
        )


class DynamicLimits(_ParamsBase):
    """
    Box bounds on velocity, acceleration and angular velocity.
    """

    _fields = ("v_min", "v_max", "a_min", "a_max", "omega_min", "omega_max")

    def __init__(
        self,
        v_min=naming.DEFAULT_V_MIN,
        v_max=naming.DEFAULT_V_MAX,
        a_min=naming.DEFAULT_A_MIN,
        a_max=naming.DEFAULT_A_MAX,
        omega_min=naming.DEFAULT_OMEGA_MIN,
        omega_max=naming.DEFAULT_OMEGA_MAX,
    ):
        for name, lo, hi in (
            ("v", v_min, v_max),
            ("a", a_min, a_max),
            ("omega", omega_min, omega_max),
        ):
            if not lo <= hi:
                raise ValueError(
                    "`{name}_min` must not exceed `{name}_max`, got [{lo}, {hi}]".format(
                        name=name, lo=lo, hi=hi
                    )
                )
        self.v_min = float(v_min)
        self.v_max = float(v_max)
        self.a_min = float(a_min)
        self.a_max = float(a_max)
        self.omega_min = float(omega_min)
        self.omega_max = float(omega_max)

    @property
    def input_lower(self):
        return np.array([self.a_min, self.omega_min])

    @property
    def input_upper(self):
        return np.array([self.a_max, self.omega_max])

    def clip_input(self, u):
        return np.clip(np.asarray(u, dtype=float), self.input_lower, self.input_upper)

    def clip_velocity(self, v):
        return min(self.v_max, max(self.v_min, float(v)))


class AgentShape(_ParamsBase):
    """
    Circular footprint of an agent.

    Parameters
    ----------
    r_v: float
        Radius of the hard constraints.
    r_soft: float
        Enlarged radius of the soft constraints, strictly larger than ``r_v``.
    """

    _fields = ("r_v", "r_soft")

    def __init__(
        self, r_v=naming.DEFAULT_AGENT_RADIUS, r_soft=naming.DEFAULT_SOFT_RADIUS
    ):
        if not 0 < r_v < r_soft:
            raise ValueError(
                "Expected 0 < r_v < r_soft, got r_v={}, r_soft={}".format(r_v, r_soft)
            )
        self.r_v = float(r_v)
        self.r_soft = float(r_soft)


class MpcParams(_ParamsBase):
    """
    Controller and solver configuration.

    Parameters
    ----------
    dt: float
        Prediction step in seconds.
    n_t: int
        Prediction horizon in steps.
    frequency: float
        Controller update frequency in Hz.
    R: array-like
        2 x 2 input cost matrix (positive semidefinite); scalars and diagonals
        are accepted.
    Q: float
        Quadratic weight of the objective distance.
    q: float
        Linear weight of the objective distance.
    n_h: int
        Element horizon.
    n_ha: int
        Agent horizon used for flock formation.
    soft_penalty: float
        Linear penalty on soft constraint slacks.
    max_iterations: int
        Outer iteration cap of the solver.
    inner_max_iterations: int
        Iteration cap of every bound constrained subproblem.
    tolerance: float
        Violation and stationarity tolerance for optimality.
    infeasibility_threshold: float
        Violation above which a stalling solve is declared infeasible.
    infeasibility_stall: int
        Number of outer iterations without progress before declaring infeasibility.
    max_cpu_time: float, optional
        Wall time cap of a single solve in seconds; ``None`` disables it.
    """

    _fields = (
        "dt",
        "n_t",
        "frequency",
        "R",
        "Q",
        "q",
        "n_h",
        "n_ha",
        "soft_penalty",
        "max_iterations",
        "inner_max_iterations",
        "tolerance",
        "infeasibility_threshold",
        "infeasibility_stall",
        "max_cpu_time",
    )

    def __init__(
        self,
        dt=naming.DEFAULT_DT,
        n_t=naming.DEFAULT_PREDICTION_HORIZON,
        frequency=naming.DEFAULT_FREQUENCY,
        R=naming.DEFAULT_INPUT_COST,
        Q=naming.DEFAULT_QUADRATIC_OBJECTIVE_WEIGHT,
        q=naming.DEFAULT_LINEAR_OBJECTIVE_WEIGHT,
        n_h=naming.DEFAULT_ELEMENT_HORIZON,
        n_ha=naming.DEFAULT_AGENT_HORIZON,
        soft_penalty=naming.DEFAULT_SOFT_PENALTY,
        max_iterations=naming.DEFAULT_MAX_ITERATIONS,
        inner_max_iterations=naming.DEFAULT_INNER_MAX_ITERATIONS,
        tolerance=naming.DEFAULT_SOLVER_TOLERANCE,
        infeasibility_threshold=naming.DEFAULT_INFEASIBILITY_THRESHOLD,
        infeasibility_stall=naming.DEFAULT_INFEASIBILITY_STALL,
        max_cpu_time=None,
    ):
        self.dt = float(ensure_positive(dt, "dt"))
        self.n_t = ensure_count(n_t, "n_t", minimum=1)
        self.frequency = float(ensure_positive(frequency, "frequency"))
        R = as_matrix(R, (2, 2), "R")
        if np.any(np.linalg.eigvalsh(0.5 * (R + R.T)) < -1e-12):
            raise ValueError("`R` must be positive semidefinite, got {}".format(R.tolist()))
        self.R = R
        self.Q = float(Q)
        self.q = float(q)
        if self.Q < 0:
            raise ValueError("`Q` must be non-negative, got {}".format(Q))
        self.n_h = ensure_count(n_h, "n_h")
        self.n_ha = ensure_count(n_ha, "n_ha")
        if soft_penalty < 0:
            raise ValueError("`soft_penalty` must be non-negative, got {}".format(soft_penalty))
        self.soft_penalty = float(soft_penalty)
        self.max_iterations = ensure_count(max_iterations, "max_iterations", minimum=1)
        self.inner_max_iterations = ensure_count(
            inner_max_iterations, "inner_max_iterations", minimum=1
        )
        self.tolerance = float(ensure_positive(tolerance, "tolerance"))
        self.infeasibility_threshold = float(
            ensure_positive(infeasibility_threshold, "infeasibility_threshold")
        )
        self.infeasibility_stall = ensure_count(
            infeasibility_stall, "infeasibility_stall", minimum=1
        )
        if max_cpu_time is not None:
            max_cpu_time = float(ensure_positive(max_cpu_time, "max_cpu_time"))
        self.max_cpu_time = max_cpu_time

    @property
    def control_period(self):
        """
        Seconds between two controller updates, ``1 / frequency``.
        """
        return 1.0 / self.frequency

    @property
    def warm_start_shift(self):
        """
        Number of prediction steps elapsed between two controller updates.
        """
        return self.control_period / self.dt

    def with_overrides(self, overrides):
        """
        Copy with the entries of the mapping ``overrides`` replaced.

        Raises
        ------
        ValueError
            If ``overrides`` contains unknown keys.
        """
        dct = self.to_dict()
        unknown = sorted(set(overrides or {}) - set(self._fields))
        if unknown:
            raise ValueError(
                "Unknown MpcParams keys: {}. Allowed keys are {}".format(
                    ", ".join(unknown), ", ".join(self._fields)
                )
            )
        dct.update(overrides or {})
        return MpcParams.from_dict(dct)
