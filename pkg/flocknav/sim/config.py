# -*- coding: utf-8 -*-
"""
Simulation configuration and the scenario file format.

A scenario file is a JSON document::

    {
        "map": "builtin:benchmark",
        "agents": [{"id": "a0", "route": ["H_00_01_0", "H_00_01_1", ...]}, ...],
        "mode": "D",
        "params": {"n_t": 25},
        "runs": 25,
        "seed": 0,
        "max_steps": 400
    }

``map`` is ``builtin:benchmark``, ``builtin:example`` or a path relative to
the scenario file. Agents may additionally define ``shape`` and ``limits``.

Instead of ``agents`` a scenario may list several route sets (different
start areas and routes of the same scenario)::

    {
        "map": "builtin:benchmark",
        "route_sets": [[{"id": "a0", ...}, ...], [{"id": "a0", ...}, ...]],
        "route_set": 0,
        ...
    }

``route_set`` selects the set that is simulated and defaults to the first.
"""

import enum
import os
from collections import OrderedDict

import pkg_resources

from flocknav.core import naming
from flocknav.core._compat import dump_json, load_json
from flocknav.core._mixins import CopyMixin
from flocknav.core.coordination import (
    AgentTask,
    always_flocks,
    form_flocks,
    never_flocks,
)
from flocknav.core.errors import MapParseError
from flocknav.core.map_generation import example_map, generate_grid_map
from flocknav.core.params import AgentShape, DynamicLimits, MpcParams
from flocknav.core.semantic_map import check_route, load_map
from flocknav.core.utils import ensure_count

_SCENARIO_KEYS = (
    "map",
    "agents",
    "mode",
    "params",
    "runs",
    "seed",
    "max_steps",
    "plant_integrator",
    "plant_substeps",
    "route_sets",
    "route_set",
)
_AGENT_KEYS = ("id", "route", "shape", "limits")


class CooperationMode(enum.Enum):
    """
    How agents are grouped into flocks.
    """

    ALWAYS = "A"
    DYNAMIC = "D"
    NEVER = "N"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for mode in cls:
            if value in (mode.value, mode.name, mode.name.lower(), mode.name.title()):
                return mode
        raise ValueError(
            "Unknown cooperation mode {!r}, expected one of A, D, N".format(value)
        )

    def flocks(self, tasks, n_ha):
        """
        Partition ``tasks`` into flocks according to this mode.
        """
        if self is CooperationMode.ALWAYS:
            return always_flocks(tasks)
        if self is CooperationMode.NEVER:
            return never_flocks(tasks)
        return form_flocks(tasks, n_ha)


class AgentSpec(CopyMixin):
    """
    Static description of an agent of a scenario.
    """

    def __init__(self, agent_id, route, shape=None, limits=None):
        self.agent_id = agent_id
        self.route = list(route)
        self.shape = shape if shape is not None else AgentShape()
        self.limits = limits if limits is not None else DynamicLimits()

    def __repr__(self):
        return "AgentSpec(agent_id={!r}, route={})".format(self.agent_id, self.route)

    def initial_task(self):
        return AgentTask(self.agent_id, self.route, 0, self.shape, self.limits)

    def to_dict(self):
        dct = OrderedDict([("id", self.agent_id), ("route", list(self.route))])
        if self.shape != AgentShape():
            dct["shape"] = self.shape.to_dict()
        if self.limits != DynamicLimits():
            dct["limits"] = self.limits.to_dict()
        return dct

    @staticmethod
    def from_dict(dct):
        if not isinstance(dct, dict):
            raise MapParseError("Agent entries must be objects, got {!r}".format(dct))
        unknown = sorted(set(dct) - set(_AGENT_KEYS))
        if unknown:
            raise ValueError("Unknown agent keys: {}".format(", ".join(unknown)))
        if "id" not in dct or "route" not in dct:
            raise MapParseError("Agents need an `id` and a `route`")
        return AgentSpec(
            dct["id"],
            dct["route"],
            AgentShape.from_dict(dct.get("shape")),
            DynamicLimits.from_dict(dct.get("limits")),
        )


class SimConfig(CopyMixin):
    """
    Everything needed to simulate a scenario.

    Parameters
    ----------
    semantic_map: SemanticMap
    agents: list of AgentSpec
        The simulated agents, ``route_sets[route_set]`` if route sets are given.
    mode: CooperationMode or str
    params: MpcParams
    seed: int
        Base seed; run ``i`` uses the stream ``[seed, i]``.
    max_steps: int
        Control steps after which a run is aborted.
    runs: int
        Number of runs of :func:`~flocknav.sim.scenario.run_scenario`.
    plant_integrator: str
        ``"euler"`` (the predictor model) or ``"rk4"``.
    plant_substeps: int
        Integration steps per control period.
    parallel_flocks: bool
        Solve the flocks of a control step concurrently.
    map_ref: str, optional
        Reference the map was loaded from, stored with the results.
    route_sets: list of list of AgentSpec, optional
        All route sets of the scenario; defaults to ``[agents]``.
    route_set: int
        Index of the simulated route set.
    """

    def __init__(
        self,
        semantic_map,
        agents,
        mode=CooperationMode.DYNAMIC,
        params=None,
        seed=0,
        max_steps=naming.DEFAULT_MAX_STEPS,
        runs=1,
        plant_integrator=naming.DEFAULT_PLANT_INTEGRATOR,
        plant_substeps=naming.DEFAULT_PLANT_SUBSTEPS,
        parallel_flocks=True,
        map_ref=None,
        route_sets=None,
        route_set=0,
    ):
        self.semantic_map = semantic_map
        self.agents = list(agents)
        self.mode = CooperationMode.parse(mode)
        self.params = params if params is not None else MpcParams()
        self.seed = int(seed)
        self.max_steps = ensure_count(max_steps, "max_steps", minimum=1)
        self.runs = ensure_count(runs, "runs", minimum=1)
        if plant_integrator not in naming.PLANT_INTEGRATORS:
            raise ValueError(
                "Unknown plant integrator {!r}, expected one of {}".format(
                    plant_integrator, naming.PLANT_INTEGRATORS
                )
            )
        self.plant_integrator = plant_integrator
        self.plant_substeps = ensure_count(plant_substeps, "plant_substeps", minimum=1)
        self.parallel_flocks = bool(parallel_flocks)
        self.map_ref = map_ref
        self.route_sets = (
            [list(agents) for agents in route_sets]
            if route_sets is not None
            else [self.agents]
        )
        self.route_set = ensure_count(route_set, "route_set")
        self.validate()

    def __repr__(self):
        return "SimConfig(agents={}, mode={}, runs={}, seed={})".format(
            [a.agent_id for a in self.agents], self.mode.value, self.runs, self.seed
        )

    @property
    def agent_ids(self):
        return [agent.agent_id for agent in self.agents]

    def validate(self):
        """
        Raise if agent ids are not unique, a route does not fit the map or
        ``agents`` is not the selected route set.
        """
        if self.route_set >= len(self.route_sets):
            raise ValueError(
                "Route set {} does not exist, the scenario has {}".format(
                    self.route_set, len(self.route_sets)
                )
            )
        selected = [agent.to_dict() for agent in self.route_sets[self.route_set]]
        if [agent.to_dict() for agent in self.agents] != selected:
            raise ValueError(
                "The agents differ from route set {}".format(self.route_set)
            )
        for agents in self.route_sets:
            if not agents:
                raise ValueError("A scenario needs at least one agent")
            ids = [agent.agent_id for agent in agents]
            if len(set(ids)) != len(ids):
                raise ValueError("Agent ids must be unique, got {}".format(ids))
            for agent in agents:
                check_route(self.semantic_map, agent.route)

    def select_route_set(self, index):
        """
        The same scenario simulating route set ``index``.
        """
        if not 0 <= index < len(self.route_sets):
            raise ValueError(
                "Route set {} does not exist, the scenario has {}".format(
                    index, len(self.route_sets)
                )
            )
        return self.copy(agents=self.route_sets[index], route_set=index)

    def to_dict(self):
        dct = OrderedDict()
        dct["map"] = self.map_ref
        if len(self.route_sets) > 1:
            dct["route_sets"] = [
                [agent.to_dict() for agent in agents] for agents in self.route_sets
            ]
            dct["route_set"] = self.route_set
        else:
            dct["agents"] = [agent.to_dict() for agent in self.agents]
        dct["mode"] = self.mode.value
        dct["params"] = self.params.to_dict()
        dct["runs"] = self.runs
        dct["seed"] = self.seed
        dct["max_steps"] = self.max_steps
        dct["plant_integrator"] = self.plant_integrator
        dct["plant_substeps"] = self.plant_substeps
        return dct


def resolve_map(map_ref, base_dir=None):
    """
    Load the map a scenario refers to.

    Parameters
    ----------
    map_ref: str
        ``builtin:benchmark``, ``builtin:example`` or a file path.
    base_dir: str, optional
        Directory relative paths are resolved against.

    Returns
    -------
    semantic_map: SemanticMap
    map_ref: str
        The reference with relative paths made absolute.
    """
    if not isinstance(map_ref, str):
        raise MapParseError("`map` must be a string, got {!r}".format(map_ref))
    if map_ref.startswith(naming.BUILTIN_PREFIX):
        name = map_ref[len(naming.BUILTIN_PREFIX) :]
        if name == naming.BUILTIN_BENCHMARK_MAP:
            return generate_grid_map(), map_ref
        if name == naming.BUILTIN_EXAMPLE_MAP:
            return example_map(), map_ref
        raise ValueError("Unknown builtin map {!r}".format(map_ref))
    path = map_ref
    if base_dir is not None and not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    path = os.path.abspath(path)
    with open(path, "rb") as fd:
        return load_map(fd.read()), path


def _agent_list(value, name):
    if not isinstance(value, list):
        raise MapParseError("`{}` must be a list".format(name))
    return [AgentSpec.from_dict(agent) for agent in value]


def load_scenario(buf, base_dir=None, **overrides):
    """
    Parse a scenario document into a :class:`SimConfig`.

    Parameters
    ----------
    buf: Union[str, bytes]
    base_dir: str, optional
        Directory of the scenario file, used for relative map paths.
    overrides:
        ``mode``, ``runs``, ``seed``, ``max_steps``, ``route_set`` or
        ``params`` (a mapping merged into the scenario parameters); ``None``
        values are ignored.

    Returns
    -------
    config: SimConfig
    """
    try:
        dct = load_json(buf)
    except (ValueError, UnicodeDecodeError) as exc:
        raise MapParseError("Scenario is not valid JSON: {}".format(exc))
    if not isinstance(dct, dict):
        raise MapParseError("A scenario must be a JSON object")
    unknown = sorted(set(dct) - set(_SCENARIO_KEYS))
    if unknown:
        raise ValueError("Unknown scenario keys: {}".format(", ".join(unknown)))
    if "map" not in dct or ("agents" in dct) == ("route_sets" in dct):
        raise MapParseError(
            "A scenario needs `map` and either `agents` or `route_sets`"
        )
    if "route_sets" in dct:
        if not isinstance(dct["route_sets"], list) or not dct["route_sets"]:
            raise MapParseError("`route_sets` must be a non-empty list")
        route_sets = [_agent_list(agents, "route_sets") for agents in dct["route_sets"]]
    else:
        route_sets = [_agent_list(dct["agents"], "agents")]

    semantic_map, map_ref = resolve_map(dct["map"], base_dir)
    params = MpcParams().with_overrides(dct.get("params") or {})
    params = params.with_overrides(overrides.pop("params", None) or {})
    kwargs = {
        "mode": dct.get("mode", CooperationMode.DYNAMIC.value),
        "runs": dct.get("runs", 1),
        "seed": dct.get("seed", 0),
        "max_steps": dct.get("max_steps", naming.DEFAULT_MAX_STEPS),
        "plant_integrator": dct.get(
            "plant_integrator", naming.DEFAULT_PLANT_INTEGRATOR
        ),
        "plant_substeps": dct.get("plant_substeps", naming.DEFAULT_PLANT_SUBSTEPS),
        "route_set": dct.get("route_set", 0),
    }
    for key, value in overrides.items():
        if key not in kwargs:
            raise ValueError("Unknown scenario override {!r}".format(key))
        if value is not None:
            kwargs[key] = value
    index = ensure_count(kwargs["route_set"], "route_set")
    if index >= len(route_sets):
        raise ValueError(
            "Route set {} does not exist, the scenario has {}".format(
                index, len(route_sets)
            )
        )
    return SimConfig(
        semantic_map,
        route_sets[index],
        params=params,
        map_ref=map_ref,
        route_sets=route_sets,
        **kwargs
    )


def save_scenario(config):
    """
    Serialize the scenario part of ``config`` to JSON bytes.
    """
    return dump_json(config.to_dict(), indent=1)


def builtin_scenario_names():
    return sorted(
        name[: -len(naming.JSON_SUFFIX)]
        for name in pkg_resources.resource_listdir("flocknav", "data/scenarios")
        if name.endswith(naming.JSON_SUFFIX)
    )


def load_builtin_scenario(name, **overrides):
    """
    Load one of the bundled scenarios, e.g. ``"scenario1"``.
    """
    buf = pkg_resources.resource_string(
        "flocknav", "data/scenarios/{}{}".format(name, naming.JSON_SUFFIX)
    )
    return load_scenario(buf, **overrides)
