# -*- coding: utf-8 -*-
"""
Construction of the bundled environments.

:func:`generate_grid_map` builds the benchmark environment: a grid of square
intersections joined by straight corridors, every corridor cut into areas of
bounded length, rectangular blocks between the corridors and an outer wall
lining the perimeter. :func:`example_map` returns the small three-area
environment used throughout the documentation.
"""

import logging
import math
from collections import OrderedDict

from flocknav.core import naming
from flocknav.core.geometry import ConvexPolygon, Segment2
from flocknav.core.semantic_map import MapNode, Objective, SemanticMap
from flocknav.core.utils import ensure_count, ensure_positive

_logger = logging.getLogger(__name__)

_SIDES = ("S", "N", "W", "E")


def intersection_id(col, row):
    return "J_{:02d}_{:02d}".format(col, row)


def horizontal_segment_id(col, row, segment):
    return "H_{:02d}_{:02d}_{}".format(col, row, segment)


def vertical_segment_id(col, row, segment):
    return "V_{:02d}_{:02d}_{}".format(col, row, segment)


def block_id(col, row):
    return "B_{:02d}_{:02d}".format(col, row)


def interface_id(area_a, area_b):
    return "I_{}_{}".format(area_a, area_b)


def outer_wall_id(area_id, side):
    return "O_{}_{}".format(area_id, side)


class _MapBuilder(object):
    def __init__(self):
        self.nodes = OrderedDict()
        self.edges = []
        self.rects = {}

    def area(self, node_id, xmin, ymin, xmax, ymax):
        self.rects[node_id] = (xmin, ymin, xmax, ymax)
        self.nodes[node_id] = MapNode(
            node_id, naming.AREA, ConvexPolygon.rectangle(xmin, ymin, xmax, ymax)
        )

    def boundary(self, node_id, rect, areas):
        self.nodes[node_id] = MapNode(
            node_id, naming.BOUNDARY, ConvexPolygon.rectangle(*rect)
        )
        for area_id in areas:
            self.edges.append((area_id, node_id))

    def _interface(self, left, right, segment):
        node_id = interface_id(left, right)
        self.nodes[node_id] = MapNode(
            node_id,
            naming.INTERFACE,
            segment,
            objective=Objective(segment, right),
            event=segment,
        )
        self.edges.append((left, node_id))
        self.edges.append((right, node_id))

    def vertical_interface(self, left, right, x, ylow, yhigh):
        """
        Interface on the line ``x`` between ``left`` (smaller x) and ``right``.
        """
        self._interface(left, right, Segment2((x, ylow), (x, yhigh)))

    def horizontal_interface(self, bottom, top, y, xlow, xhigh):
        """
        Interface on the line ``y`` between ``bottom`` and ``top``.
        """
        self._interface(bottom, top, Segment2((xhigh, y), (xlow, y)))

    def outer_wall(self, area_id, side, thickness):
        xmin, ymin, xmax, ymax = self.rects[area_id]
        if side == "S":
            rect = (xmin, ymin - thickness, xmax, ymin)
        elif side == "N":
            rect = (xmin, ymax, xmax, ymax + thickness)
        elif side == "W":
            rect = (xmin - thickness, ymin, xmin, ymax)
        elif side == "E":
            rect = (xmax, ymin, xmax + thickness, ymax)
        else:
            raise ValueError("Unknown side {!r}, expected one of {}".format(side, _SIDES))
        self.boundary(outer_wall_id(area_id, side), rect, [area_id])

    def build(self):
        return SemanticMap(self.nodes.values(), self.edges)


def _cuts(start, stop, max_length):
    n = max(1, int(math.ceil((stop - start) / max_length - 1e-9)))
    length = (stop - start) / n
    return [start + i * length for i in range(n)] + [stop]


def generate_grid_map(
    cols=naming.DEFAULT_GRID_COLS,
    rows=naming.DEFAULT_GRID_ROWS,
    corridor_width=naming.DEFAULT_CORRIDOR_WIDTH,
    block=naming.DEFAULT_BLOCK,
    max_area_length=naming.DEFAULT_MAX_AREA_LENGTH,
    wall_thickness=naming.DEFAULT_WALL_THICKNESS,
):
    """
    Generate a grid shaped benchmark environment.

    Intersection ``(c, r)`` is centred at
    ``(w/2 + c (w + block_x), w/2 + r (w + block_y))``. The default parameters
    yield a workspace of 20 x 23 m with 2 m wide corridors.

    Parameters
    ----------
    cols: int
        Number of intersections along x, at least 2.
    rows: int
        Number of intersections along y, at least 2.
    corridor_width: float
        Width ``w`` of corridors and intersections.
    block: tuple(float, float)
        Extent of the blocks between the corridors, i.e. the corridor lengths.
    max_area_length: float
        Corridors are split into the least number of equally long areas not
        longer than this.
    wall_thickness: float
        Thickness of the outer wall.

    Returns
    -------
    semantic_map: SemanticMap
    """
    cols = ensure_count(cols, "cols", minimum=2)
    rows = ensure_count(rows, "rows", minimum=2)
    w = ensure_positive(float(corridor_width), "corridor_width")
    if len(block) != 2:
        raise ValueError("`block` needs two extents, got {!r}".format(block))
    bx = ensure_positive(float(block[0]), "block")
    by = ensure_positive(float(block[1]), "block")
    ensure_positive(max_area_length, "max_area_length")
    ensure_positive(wall_thickness, "wall_thickness")

    half = w / 2.0
    xs = [half + c * (w + bx) for c in range(cols)]
    ys = [half + r * (w + by) for r in range(rows)]
    builder = _MapBuilder()

    for c in range(cols):
        for r in range(rows):
            builder.area(
                intersection_id(c, r), xs[c] - half, ys[r] - half, xs[c] + half, ys[r] + half
            )

    horizontal = {}
    for r in range(rows):
        for c in range(cols - 1):
            cuts = _cuts(xs[c] + half, xs[c + 1] - half, max_area_length)
            segments = []
            for s in range(len(cuts) - 1):
                area_id = horizontal_segment_id(c, r, s)
                builder.area(area_id, cuts[s], ys[r] - half, cuts[s + 1], ys[r] + half)
                segments.append(area_id)
            chain = [intersection_id(c, r)] + segments + [intersection_id(c + 1, r)]
            for left, right, x in zip(chain[:-1], chain[1:], cuts):
                builder.vertical_interface(left, right, x, ys[r] - half, ys[r] + half)
            horizontal[c, r] = segments

    vertical = {}
    for c in range(cols):
        for r in range(rows - 1):
            cuts = _cuts(ys[r] + half, ys[r + 1] - half, max_area_length)
            segments = []
            for s in range(len(cuts) - 1):
                area_id = vertical_segment_id(c, r, s)
                builder.area(area_id, xs[c] - half, cuts[s], xs[c] + half, cuts[s + 1])
                segments.append(area_id)
            chain = [intersection_id(c, r)] + segments + [intersection_id(c, r + 1)]
            for bottom, top, y in zip(chain[:-1], chain[1:], cuts):
                builder.horizontal_interface(bottom, top, y, xs[c] - half, xs[c] + half)
            vertical[c, r] = segments

    for c in range(cols - 1):
        for r in range(rows - 1):
            areas = (
                horizontal[c, r]
                + horizontal[c, r + 1]
                + vertical[c, r]
                + vertical[c + 1, r]
                + [
                    intersection_id(c, r),
                    intersection_id(c + 1, r),
                    intersection_id(c, r + 1),
                    intersection_id(c + 1, r + 1),
                ]
            )
            rect = (xs[c] + half, ys[r] + half, xs[c + 1] - half, ys[r + 1] - half)
            builder.boundary(block_id(c, r), rect, areas)

    t = wall_thickness
    for c in range(cols):
        builder.outer_wall(intersection_id(c, 0), "S", t)
        builder.outer_wall(intersection_id(c, rows - 1), "N", t)
    for r in range(rows):
        builder.outer_wall(intersection_id(0, r), "W", t)
        builder.outer_wall(intersection_id(cols - 1, r), "E", t)
    for c in range(cols - 1):
        for area_id in horizontal[c, 0]:
            builder.outer_wall(area_id, "S", t)
        for area_id in horizontal[c, rows - 1]:
            builder.outer_wall(area_id, "N", t)
    for r in range(rows - 1):
        for area_id in vertical[0, r]:
            builder.outer_wall(area_id, "W", t)
        for area_id in vertical[cols - 1, r]:
            builder.outer_wall(area_id, "E", t)

    semantic_map = builder.build()
    _logger.debug("Generated %r with bounding box %s", semantic_map, semantic_map.bounding_box())
    return semantic_map


def example_map():
    """
    The simplified three-area environment.

    ``S0`` is a vertical corridor leading to the corner ``S1`` which opens to the
    horizontal corridor ``S2``. ``I0`` and ``I3`` lie on the border of the map.
    """
    s0 = MapNode("S0", naming.AREA, ConvexPolygon.rectangle(-3.5, -2.0, -2.5, 2.0))
    s1 = MapNode("S1", naming.AREA, ConvexPolygon.rectangle(-3.5, 2.0, -2.5, 3.0))
    s2 = MapNode("S2", naming.AREA, ConvexPolygon.rectangle(-2.5, 2.0, 0.5, 3.0))

    i0 = Segment2((-3.5, -2.0), (-2.5, -2.0))
    i1 = Segment2((-2.5, 2.0), (-3.5, 2.0))
    i2 = Segment2((-2.5, 2.0), (-2.5, 3.0))
    i3 = Segment2((0.5, 2.0), (0.5, 3.0))
    interfaces = [
        MapNode("I0", naming.INTERFACE, i0, Objective(i0, None), i0),
        MapNode("I1", naming.INTERFACE, i1, Objective(i1, "S1"), i1),
        MapNode("I2", naming.INTERFACE, i2, Objective(i2, "S2"), i2),
        MapNode("I3", naming.INTERFACE, i3, Objective(i3, None), i3),
    ]
    walls = [
        MapNode("W0", naming.BOUNDARY, ConvexPolygon.rectangle(-3.75, -2.0, -3.55, 3.25)),
        MapNode("W1", naming.BOUNDARY, ConvexPolygon.rectangle(-2.45, -2.0, -2.25, 1.95)),
        MapNode("W2", naming.BOUNDARY, ConvexPolygon.rectangle(-3.55, 3.05, 0.5, 3.25)),
        MapNode("W3", naming.BOUNDARY, ConvexPolygon.rectangle(-2.45, 1.75, 0.5, 1.95)),
    ]
    edges = [
        ("S0", "I0"),
        ("S0", "I1"),
        ("S1", "I1"),
        ("S1", "I2"),
        ("S2", "I2"),
        ("S2", "I3"),
        ("S0", "W0"),
        ("S0", "W1"),
        ("S1", "W0"),
        ("S1", "W2"),
        ("S2", "W2"),
        ("S2", "W3"),
    ]
    return SemanticMap([s0, s1, s2] + interfaces + walls, edges)
