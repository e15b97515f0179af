# -*- coding: utf-8 -*-
"""
Agent tasks, semantic horizons, area events and flock formation.
"""

import logging

from flocknav.core._mixins import CopyMixin
from flocknav.core.errors import RouteError
from flocknav.core.geometry import point_in_polygon
from flocknav.core.params import AgentShape, DynamicLimits
from flocknav.core.semantic_map import check_route

_logger = logging.getLogger(__name__)


class AgentTask(CopyMixin):
    """
    Route and progress of a single agent.

    Parameters
    ----------
    agent_id: str
    route: list of str
        Area ids from start area to goal area.
    mode: int
        Index of the current area in ``route``.
    shape: AgentShape
    limits: DynamicLimits
    """

    def __init__(self, agent_id, route, mode=0, shape=None, limits=None):
        if not route:
            raise RouteError("Agent `{}` has an empty route".format(agent_id))
        if not 0 <= mode < len(route):
            raise RouteError(
                "Mode {} of agent `{}` out of range for a route of {} areas".format(
                    mode, agent_id, len(route)
                )
            )
        self.agent_id = agent_id
        self.route = list(route)
        self.mode = int(mode)
        self.shape = shape if shape is not None else AgentShape()
        self.limits = limits if limits is not None else DynamicLimits()

    def __repr__(self):
        return "AgentTask(agent_id={!r}, mode={}/{})".format(
            self.agent_id, self.mode, len(self.route) - 1
        )

    @property
    def current_area(self):
        return self.route[self.mode]

    @property
    def goal_mode(self):
        return len(self.route) - 1

    @property
    def completed(self):
        return self.mode == self.goal_mode

    def advance(self):
        """
        Copy of the task with the mode incremented by one.
        """
        if self.completed:
            raise RouteError("Agent `{}` already reached its goal".format(self.agent_id))
        return self.copy(mode=self.mode + 1)

    def check(self, semantic_map):
        check_route(semantic_map, self.route)


def semantic_horizon(task, n):
    """
    The route areas ``[m, min(m + n, len(route) - 1)]`` of ``task``.
    """
    last = min(task.mode + n, task.goal_mode)
    return task.route[task.mode : last + 1]


class _UnionFind(object):
    def __init__(self, items):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return
        # smaller id becomes the root so the result does not depend on the order
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra

    def groups(self):
        groups = {}
        for item in self.parent:
            groups.setdefault(self.find(item), []).append(item)
        return groups


class FlockSet(object):
    """
    Partition of agents into flocks.

    Parameters
    ----------
    flocks: iterable of iterable of str
        Disjoint agent id groups. Agent ids are sorted within a flock and the
        flocks are ordered by their first agent id.
    """

    def __init__(self, flocks):
        normalized = [tuple(sorted(flock)) for flock in flocks]
        if any(len(flock) == 0 for flock in normalized):
            raise ValueError("Flocks must not be empty")
        seen = set()
        for flock in normalized:
            overlap = seen & set(flock)
            if overlap:
                raise ValueError(
                    "Agents {} are part of more than one flock".format(sorted(overlap))
                )
            seen.update(flock)
        self.flocks = sorted(normalized)

    def __repr__(self):
        return "FlockSet({})".format(self.flocks)

    def __eq__(self, other):
        return isinstance(other, FlockSet) and self.flocks == other.flocks

    def __ne__(self, other):
        return not (self == other)

    def __iter__(self):
        return iter(self.flocks)

    def __len__(self):
        return len(self.flocks)

    @property
    def agent_ids(self):
        return sorted(agent_id for flock in self.flocks for agent_id in flock)

    def as_sets(self):
        return {frozenset(flock) for flock in self.flocks}

    def flock_of(self, agent_id):
        for flock in self.flocks:
            if agent_id in flock:
                return flock
        raise KeyError("Agent `{}` is not part of any flock".format(agent_id))

    @property
    def sizes(self):
        return [len(flock) for flock in self.flocks]

    @property
    def mean_size(self):
        return sum(self.sizes) / float(len(self.flocks))


def _check_unique(tasks):
    ids = [task.agent_id for task in tasks]
    if len(set(ids)) != len(ids):
        raise ValueError("Agent ids must be unique, got {}".format(ids))
    return ids


def form_flocks(tasks, n_ha):
    """
    Group agents whose semantic horizons overlap.

    Two agents are paired if their ``n_ha`` horizons share an area; the pairs
    are closed transitively and agents without any overlap end up alone.

    Parameters
    ----------
    tasks: list of AgentTask
    n_ha: int
        Agent horizon.

    Returns
    -------
    flocks: FlockSet
    """
    ids = _check_unique(tasks)
    horizons = {task.agent_id: set(semantic_horizon(task, n_ha)) for task in tasks}
    uf = _UnionFind(ids)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if horizons[a] & horizons[b]:
                uf.union(a, b)
    flocks = FlockSet(uf.groups().values())
    _logger.debug("Formed flocks %s with agent horizon %s", flocks.flocks, n_ha)
    return flocks


def always_flocks(tasks):
    """
    A single flock with every agent.
    """
    return FlockSet([_check_unique(tasks)])


def never_flocks(tasks):
    """
    Every agent in a flock of its own.
    """
    return FlockSet([[agent_id] for agent_id in _check_unique(tasks)])


def check_event(task, position, semantic_map):
    """
    Detect the transition into the next route area.

    Parameters
    ----------
    task: AgentTask
    position: array-like
        Planar agent position.
    semantic_map: SemanticMap

    Returns
    -------
    new_mode: int or None
        ``task.mode + 1`` if ``position`` lies inside the next route area.
    """
    if task.completed:
        return None
    next_area = semantic_map.polygon(task.route[task.mode + 1])
    if point_in_polygon(position, next_area):
        return task.mode + 1
    return None
