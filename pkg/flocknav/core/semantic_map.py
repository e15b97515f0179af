# -*- coding: utf-8 -*-
"""
The semantic map: a property graph of areas, interfaces and boundaries.

Areas are the drivable building blocks of a route. Two areas are never
connected directly but always through exactly one interface node. Boundaries
are convex no-go polygons attached to the areas they line. Every interface
carries an oriented objective segment and an event segment which configure
the motion controller of an agent traversing it.
"""

import logging
from collections import OrderedDict, deque

import numpy as np

from flocknav.core import naming
from flocknav.core._compat import dump_json, load_json
from flocknav.core.errors import MapParseError, MapValidationError, RouteError
from flocknav.core.geometry import ConvexPolygon, Segment2, bounding_box

_logger = logging.getLogger(__name__)

NODE_KINDS = (naming.AREA, naming.INTERFACE, naming.BOUNDARY)


class Objective(object):
    """
    Oriented objective line of an interface.

    Parameters
    ----------
    segment: Segment2
        Objective line, authored so that ``forward_area`` lies on its right
        (negative) side.
    forward_area: str or None
        Area entered when crossing the line in the rewarded direction. ``None``
        is only allowed for interfaces on the border of the map.
    """

    def __init__(self, segment, forward_area):
        self.segment = segment
        self.forward_area = forward_area

    def __eq__(self, other):
        return (
            isinstance(other, Objective)
            and self.segment == other.segment
            and self.forward_area == other.forward_area
        )

    def __ne__(self, other):
        return not (self == other)

    def __repr__(self):
        return "Objective(segment={!r}, forward_area={!r})".format(
            self.segment, self.forward_area
        )

    def oriented_towards(self, area_id):
        """
        The objective segment oriented such that ``area_id`` is on the negative side.
        """
        if self.forward_area == area_id:
            return self.segment
        return self.segment.reversed()


class MapNode(object):
    """
    A vertex of the semantic map.

    Parameters
    ----------
    id: str
        Unique node identifier.
    kind: str
        One of ``"area"``, ``"interface"`` or ``"boundary"``.
    geometry: ConvexPolygon or Segment2
        Polygon for areas and boundaries, segment for interfaces.
    objective: Objective, optional
        Interfaces only.
    event: Segment2, optional
        Interfaces only.
    """

    def __init__(self, id, kind, geometry, objective=None, event=None):
        if kind not in NODE_KINDS:
            raise ValueError(
                "Unknown node kind {!r}, expected one of {}".format(kind, NODE_KINDS)
            )
        self.id = id
        self.kind = kind
        self.geometry = geometry
        self.objective = objective
        self.event = event

    def __repr__(self):
        return "MapNode(id={!r}, kind={!r})".format(self.id, self.kind)

    def __eq__(self, other):
        return (
            isinstance(other, MapNode)
            and self.id == other.id
            and self.kind == other.kind
            and self.geometry == other.geometry
            and self.objective == other.objective
            and self.event == other.event
        )

    def __ne__(self, other):
        return not (self == other)

    @property
    def vertices(self):
        return self.geometry.vertices

    def to_dict(self):
        dct = OrderedDict([("id", self.id), ("kind", self.kind)])
        if self.kind == naming.INTERFACE:
            dct["segment"] = self.geometry.to_list()
            if self.objective is not None:
                dct["objective"] = OrderedDict(
                    [
                        ("segment", self.objective.segment.to_list()),
                        ("forward_area", self.objective.forward_area),
                    ]
                )
            if self.event is not None:
                dct["event"] = {"segment": self.event.to_list()}
        else:
            dct["polygon"] = self.geometry.to_list()
        return dct

    @staticmethod
    def from_dict(dct):
        try:
            node_id = dct["id"]
            kind = dct["kind"]
        except (KeyError, TypeError):
            raise MapParseError("Node without `id` or `kind`: {!r}".format(dct))
        if not isinstance(node_id, str):
            raise MapParseError("Node id must be a string, got {!r}".format(node_id))
        if kind not in NODE_KINDS:
            raise MapValidationError(
                [(node_id, "node_kind", "unknown kind {!r}".format(kind))]
            )
        try:
            if kind == naming.INTERFACE:
                if "segment" not in dct:
                    raise MapValidationError(
                        [(node_id, "geometry_kind", "interface needs a `segment`")]
                    )
                geometry = Segment2.from_list(dct["segment"])
                objective = None
                event = None
                if dct.get("objective") is not None:
                    objective = Objective(
                        Segment2.from_list(dct["objective"]["segment"]),
                        dct["objective"].get("forward_area"),
                    )
                if dct.get("event") is not None:
                    event = Segment2.from_list(dct["event"]["segment"])
                return MapNode(node_id, kind, geometry, objective, event)
            else:
                if "polygon" not in dct:
                    raise MapValidationError(
                        [(node_id, "geometry_kind", "{} needs a `polygon`".format(kind))]
                    )
                return MapNode(node_id, kind, ConvexPolygon.from_list(dct["polygon"]))
        except MapValidationError:
            raise
        except (ValueError, TypeError, KeyError) as exc:
            raise MapValidationError([(node_id, "geometry_valid", str(exc))])


def _edge_key(u, v):
    return tuple(sorted((u, v)))


class SemanticMap(object):
    """
    Immutable graph world model.

    Parameters
    ----------
    nodes: iterable of MapNode
    edges: iterable of pair of str
        Unordered node id pairs.
    validate: bool
        Raise :class:`~flocknav.core.errors.MapValidationError` if the graph
        violates a structural rule.
    """

    def __init__(self, nodes, edges, validate=True):
        self.nodes = OrderedDict()
        duplicates = []
        for node in sorted(nodes, key=lambda n: n.id):
            if node.id in self.nodes:
                duplicates.append((node.id, "unique_id", "node id used twice"))
            self.nodes[node.id] = node
        self._raw_edges = [tuple(e) for e in edges]
        self.edges = frozenset(_edge_key(u, v) for u, v in self._raw_edges)
        self._adjacency = {node_id: [] for node_id in self.nodes}
        for u, v in sorted(self.edges):
            if u in self._adjacency and v in self._adjacency and u != v:
                self._adjacency[u].append(v)
                self._adjacency[v].append(u)
        for node_id in self._adjacency:
            self._adjacency[node_id] = tuple(sorted(self._adjacency[node_id]))
        self._duplicates = duplicates
        if validate:
            violations = self.validate()
            if violations:
                raise MapValidationError(violations)

    def __repr__(self):
        return "SemanticMap(areas={}, interfaces={}, boundaries={})".format(
            len(self.areas), len(self.interfaces), len(self.boundaries)
        )

    def __eq__(self, other):
        return (
            isinstance(other, SemanticMap)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __ne__(self, other):
        return not (self == other)

    def _ids_of_kind(self, kind):
        return [node_id for node_id, node in self.nodes.items() if node.kind == kind]

    @property
    def areas(self):
        return self._ids_of_kind(naming.AREA)

    @property
    def interfaces(self):
        return self._ids_of_kind(naming.INTERFACE)

    @property
    def boundaries(self):
        return self._ids_of_kind(naming.BOUNDARY)

    def node(self, node_id):
        try:
            return self.nodes[node_id]
        except KeyError:
            raise KeyError("Unknown map node `{}`".format(node_id))

    def neighbors(self, node_id, kind=None):
        """
        Sorted ids of the nodes adjacent to ``node_id``, optionally of one ``kind`` only.
        """
        neighbors = self._adjacency[node_id]
        if kind is None:
            return list(neighbors)
        return [n for n in neighbors if self.nodes[n].kind == kind]

    def interfaces_of(self, area_id):
        return self.neighbors(area_id, naming.INTERFACE)

    def boundaries_of(self, area_id):
        return self.neighbors(area_id, naming.BOUNDARY)

    def areas_of(self, node_id):
        return self.neighbors(node_id, naming.AREA)

    def interface_between(self, area_a, area_b):
        """
        Id of the interface connecting two areas or ``None``.
        """
        if area_a not in self._adjacency or area_b not in self._adjacency:
            return None
        shared = set(self.interfaces_of(area_a)) & set(self.interfaces_of(area_b))
        if not shared:
            return None
        return sorted(shared)[0]

    def polygon(self, area_id):
        return self.node(area_id).geometry

    def bounding_box(self):
        """
        ``(xmin, ymin, xmax, ymax)`` over the geometry of all nodes.
        """
        return bounding_box(node.vertices for node in self.nodes.values())

    def validate(self):
        """
        Check the structural rules of the graph.

        Every edge joins an area with an interface or a boundary. Interfaces
        inside the map join exactly two areas. Interfaces on the map border
        join a single area and are accepted; they can never become active and
        only bound the area like a wall.

        Returns
        -------
        violations: list of tuple(str, str, str)
            ``(node_id, rule, message)``; empty if the map is valid.
        """
        violations = list(self._duplicates)
        if not self.nodes:
            violations.append(("<map>", "non_empty", "the map contains no nodes"))
            return violations

        seen = set()
        for u, v in self._raw_edges:
            key = _edge_key(u, v)
            if key in seen:
                violations.append(
                    (u, "duplicate_edge", "edge {} - {} listed twice".format(u, v))
                )
            seen.add(key)
            if u == v:
                violations.append((u, "self_loop", "edge from a node to itself"))
                continue
            missing = [n for n in (u, v) if n not in self.nodes]
            if missing:
                violations.append(
                    (
                        missing[0],
                        "edge_unknown_node",
                        "edge {} - {} references an unknown node".format(u, v),
                    )
                )
                continue
            kinds = {self.nodes[u].kind, self.nodes[v].kind}
            if naming.AREA not in kinds or len(kinds) != 2:
                violations.append(
                    (
                        u,
                        "edge_kinds",
                        "edge {} ({}) - {} ({}) must join an area with an interface "
                        "or a boundary".format(
                            u, self.nodes[u].kind, v, self.nodes[v].kind
                        ),
                    )
                )

        for node_id, node in self.nodes.items():
            if node.kind == naming.INTERFACE:
                violations.extend(self._validate_interface(node))
            else:
                if not isinstance(node.geometry, ConvexPolygon):
                    violations.append(
                        (node_id, "geometry_kind", "{} needs a polygon".format(node.kind))
                    )
                if node.kind == naming.BOUNDARY and not self.areas_of(node_id):
                    violations.append(
                        (node_id, "boundary_degree", "boundary without an area")
                    )
        return violations

    def _validate_interface(self, node):
        violations = []
        node_id = node.id
        if not isinstance(node.geometry, Segment2):
            violations.append((node_id, "geometry_kind", "interface needs a segment"))
        areas = self.areas_of(node_id)
        if len(areas) not in (1, 2):
            violations.append(
                (
                    node_id,
                    "interface_degree",
                    "interface joins {} areas, expected 2, or 1 for an interface "
                    "on the map border".format(
                        len(areas)
                    ),
                )
            )
        if node.objective is None or node.event is None:
            violations.append(
                (
                    node_id,
                    "interface_properties",
                    "interface needs both an objective and an event",
                )
            )
        elif len(areas) == 2 and node.objective.forward_area not in areas:
            violations.append(
                (
                    node_id,
                    "objective_forward_area",
                    "forward area {!r} is not one of {}".format(
                        node.objective.forward_area, areas
                    ),
                )
            )
        elif (
            len(areas) == 1
            and node.objective.forward_area is not None
            and node.objective.forward_area in self.nodes
        ):
            violations.append(
                (
                    node_id,
                    "objective_forward_area",
                    "border interface points into map node {!r}".format(
                        node.objective.forward_area
                    ),
                )
            )
        return violations

    def to_dict(self):
        edges = []
        for u, v in sorted(self.edges):
            if u in self.nodes and self.nodes[u].kind != naming.AREA:
                u, v = v, u
            edges.append([u, v])
        return OrderedDict(
            [
                ("nodes", [node.to_dict() for node in self.nodes.values()]),
                ("edges", sorted(edges)),
            ]
        )

    def to_json(self):
        return dump_json(self.to_dict(), indent=1)

    @staticmethod
    def from_dict(dct, validate=True):
        if not isinstance(dct, dict) or "nodes" not in dct or "edges" not in dct:
            raise MapParseError("A map document needs `nodes` and `edges`")
        if not isinstance(dct["nodes"], list) or not isinstance(dct["edges"], list):
            raise MapParseError("`nodes` and `edges` must be lists")
        nodes = [MapNode.from_dict(node) for node in dct["nodes"]]
        edges = []
        for edge in dct["edges"]:
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise MapParseError("Edges must be id pairs, got {!r}".format(edge))
            edges.append((edge[0], edge[1]))
        return SemanticMap(nodes, edges, validate=validate)

    @staticmethod
    def load_from_buffer(buf, validate=True):
        try:
            dct = load_json(buf)
        except (ValueError, UnicodeDecodeError) as exc:
            raise MapParseError("Map is not valid JSON: {}".format(exc))
        return SemanticMap.from_dict(dct, validate=validate)


def load_map(buf):
    """
    Parse and validate a map document.

    Parameters
    ----------
    buf: Union[str, bytes]
        JSON map file content.

    Returns
    -------
    semantic_map: SemanticMap

    Raises
    ------
    MapParseError
        The document is malformed.
    MapValidationError
        The graph violates a structural rule; the error names node id and rule.
    """
    return SemanticMap.load_from_buffer(buf)


def save_map(semantic_map):
    """
    Serialize a map to JSON bytes; :func:`load_map` is its inverse.
    """
    return semantic_map.to_json()


def validate_map(buf):
    """
    Collect every violation of a map document instead of raising on the first.

    Returns
    -------
    violations: list of tuple(str, str, str)
    """
    try:
        dct = load_json(buf)
    except (ValueError, UnicodeDecodeError) as exc:
        raise MapParseError("Map is not valid JSON: {}".format(exc))
    if not isinstance(dct, dict) or not isinstance(dct.get("nodes"), list):
        raise MapParseError("A map document needs `nodes` and `edges`")
    violations = []
    nodes = []
    for raw in dct["nodes"]:
        try:
            nodes.append(MapNode.from_dict(raw))
        except MapValidationError as exc:
            violations.extend(exc.violations)
    edges = []
    for edge in dct.get("edges", []):
        if isinstance(edge, (list, tuple)) and len(edge) == 2:
            edges.append((edge[0], edge[1]))
        else:
            violations.append(("<map>", "edge_format", "malformed edge {!r}".format(edge)))
    semantic_map = SemanticMap(nodes, edges, validate=False)
    violations.extend(semantic_map.validate())
    return violations


class RelevantElements(object):
    """
    Map elements relevant to one agent over its semantic horizon.

    Attributes
    ----------
    areas: list of str
        Horizon areas, one per slot.
    walls: OrderedDict
        Wall id -> vertex array, deduplicated over slots. Contains boundaries
        and inactive interfaces (virtual walls).
    slot_walls: list of list of str
        Wall ids contributed by every slot.
    active_interfaces: list of str
        One per slot that has a successor area.
    objectives: list of Segment2
        Oriented objective lines, positive on the approach side.
    events: list of Segment2
    """

    def __init__(self, areas, walls, slot_walls, active_interfaces, objectives, events):
        self.areas = areas
        self.walls = walls
        self.slot_walls = slot_walls
        self.active_interfaces = active_interfaces
        self.objectives = objectives
        self.events = events

    def __repr__(self):
        return (
            "RelevantElements(areas={}, walls={}, active_interfaces={})".format(
                self.areas, list(self.walls), self.active_interfaces
            )
        )

    @property
    def wall_ids(self):
        return list(self.walls)


def check_route(semantic_map, route):
    """
    Raise :class:`~flocknav.core.errors.RouteError` unless consecutive route
    areas exist and share an interface.
    """
    if not route:
        raise RouteError("A route needs at least one area")
    for area_id in route:
        node = semantic_map.nodes.get(area_id)
        if node is None or node.kind != naming.AREA:
            raise RouteError("Route area `{}` is not an area of the map".format(area_id))
    for prev_area, next_area in zip(route[:-1], route[1:]):
        if semantic_map.interface_between(prev_area, next_area) is None:
            raise RouteError(
                "Route areas `{}` and `{}` are not connected by an interface".format(
                    prev_area, next_area
                )
            )


def relevant_elements(semantic_map, route, mode, n_h):
    """
    Retrieve walls, active interfaces, objectives and events for an agent.

    For every slot ``j`` of the window ``[mode, min(mode + n_h, len(route) - 1)]``
    the walls are the boundaries of ``route[j]`` plus the interfaces of
    ``route[j]`` not leading to ``route[j - 1]`` or ``route[j + 1]``. The
    interface towards ``route[j + 1]`` is the active one of the slot and
    provides objective and event. The goal slot has no active interface.

    Parameters
    ----------
    semantic_map: SemanticMap
    route: list of str
    mode: int
        Index of the current area in ``route``.
    n_h: int
        Element horizon.

    Returns
    -------
    elements: RelevantElements
    """
    if not 0 <= mode < len(route):
        raise RouteError(
            "Mode {} out of range for a route of {} areas".format(mode, len(route))
        )
    check_route(semantic_map, route)

    last = min(mode + n_h, len(route) - 1)
    areas = list(route[mode : last + 1])
    active = []
    objectives = []
    events = []
    for j in range(mode, last + 1):
        if j + 1 < len(route):
            interface_id = semantic_map.interface_between(route[j], route[j + 1])
            node = semantic_map.node(interface_id)
            if node.objective is None or node.event is None:
                raise RouteError(
                    "Interface `{}` lacks objective or event".format(interface_id)
                )
            active.append(interface_id)
            objectives.append(node.objective.oriented_towards(route[j + 1]))
            events.append(node.event)

    active_set = set(active)
    walls = OrderedDict()
    slot_walls = []
    for j in range(mode, last + 1):
        area_id = route[j]
        neighbours = set()
        if j > 0:
            neighbours.add(route[j - 1])
        if j + 1 < len(route):
            neighbours.add(route[j + 1])
        slot = list(semantic_map.boundaries_of(area_id))
        for interface_id in semantic_map.interfaces_of(area_id):
            if interface_id in active_set:
                continue
            if neighbours & set(semantic_map.areas_of(interface_id)):
                continue
            slot.append(interface_id)
        slot = sorted(slot)
        slot_walls.append(slot)
        for wall_id in slot:
            if wall_id not in walls:
                walls[wall_id] = semantic_map.node(wall_id).vertices
    _logger.debug(
        "Relevant elements for route slot %s..%s: %s walls, active %s",
        mode,
        last,
        len(walls),
        active,
    )
    return RelevantElements(areas, walls, slot_walls, active, objectives, events)


def find_route(semantic_map, start_area, goal_area):
    """
    Shortest route (in number of areas) between two areas, breadth first over
    interfaces joining two areas. Neighbours are expanded in id order so the
    result is deterministic.

    Returns
    -------
    route: list of str
    """
    for area_id in (start_area, goal_area):
        if area_id not in semantic_map.nodes:
            raise RouteError("Unknown area `{}`".format(area_id))
    parents = {start_area: None}
    queue = deque([start_area])
    while queue:
        current = queue.popleft()
        if current == goal_area:
            break
        for interface_id in semantic_map.interfaces_of(current):
            for area_id in semantic_map.areas_of(interface_id):
                if area_id not in parents:
                    parents[area_id] = current
                    queue.append(area_id)
    if goal_area not in parents:
        raise RouteError("No route from `{}` to `{}`".format(start_area, goal_area))
    route = [goal_area]
    while parents[route[-1]] is not None:
        route.append(parents[route[-1]])
    return route[::-1]


def wall_vertex_arrays(semantic_map, wall_ids):
    return [np.asarray(semantic_map.node(w).vertices) for w in wall_ids]
