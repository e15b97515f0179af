# -*- coding: utf-8 -*-
"""
Planar geometry used by the semantic map, the MPC constraints and the
ground truth collision checks of the simulator.

Points are handled as ``numpy`` arrays of shape ``(2,)``; segments and convex
polygons are small value objects wrapping a vertex array.
"""

import numpy as np

from flocknav.core.naming import GEOMETRY_TOLERANCE


def as_point(p):
    """
    Convert ``p`` to a finite float array of shape ``(2,)``.
    """
    arr = np.asarray(p, dtype=float)
    if arr.shape != (2,):
        raise ValueError("A point needs exactly two coordinates, got {!r}".format(p))
    if not np.all(np.isfinite(arr)):
        raise ValueError("Point coordinates must be finite, got {!r}".format(p))
    return arr


def cross(u, v):
    """
    z-component of the cross product of two planar vectors (broadcasting).
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


class Segment2(object):
    """
    Directed line segment from ``a`` to ``b``.

    Parameters
    ----------
    a: array-like
        Start point.
    b: array-like
        End point, must differ from ``a`` by more than the geometry tolerance.
    """

    def __init__(self, a, b):
        a = as_point(a)
        b = as_point(b)
        if np.hypot(*(b - a)) <= GEOMETRY_TOLERANCE:
            raise ValueError("Degenerate segment {} -> {}".format(list(a), list(b)))
        self.a = a
        self.b = b

    def __repr__(self):
        return "Segment2(a={}, b={})".format(self.a.tolist(), self.b.tolist())

    def __eq__(self, other):
        return (
            isinstance(other, Segment2)
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __ne__(self, other):
        return not (self == other)

    @property
    def vertices(self):
        return np.vstack([self.a, self.b])

    @property
    def length(self):
        return float(np.hypot(*(self.b - self.a)))

    @property
    def direction(self):
        return (self.b - self.a) / self.length

    @property
    def normal(self):
        """
        Unit normal pointing to the left of ``a -> b`` (the positive side).
        """
        d = self.direction
        return np.array([-d[1], d[0]])

    @property
    def midpoint(self):
        return 0.5 * (self.a + self.b)

    def reversed(self):
        return Segment2(self.b, self.a)

    def to_list(self):
        return [self.a.tolist(), self.b.tolist()]

    @classmethod
    def from_list(cls, points):
        if len(points) != 2:
            raise ValueError("A segment needs exactly two points, got {}".format(points))
        return cls(points[0], points[1])


class ConvexPolygon(object):
    """
    Strictly convex polygon with counter-clockwise vertex order.

    Parameters
    ----------
    vertices: array-like of shape (n, 2)
        At least three vertices in counter-clockwise order.
    """

    def __init__(self, vertices):
        vertices = np.asarray(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise ValueError("Polygon vertices must have shape (n, 2)")
        if vertices.shape[0] < 3:
            raise ValueError(
                "A polygon needs at least 3 vertices, got {}".format(vertices.shape[0])
            )
        if not np.all(np.isfinite(vertices)):
            raise ValueError("Polygon coordinates must be finite")
        edges = np.roll(vertices, -1, axis=0) - vertices
        turns = cross(edges, np.roll(edges, -1, axis=0))
        if _signed_area(vertices) <= 0:
            raise ValueError("Polygon vertices must be ordered counter-clockwise")
        if np.any(turns <= GEOMETRY_TOLERANCE):
            raise ValueError("Polygon is not strictly convex")
        self.vertices = vertices

    def __repr__(self):
        return "ConvexPolygon(vertices={})".format(self.vertices.tolist())

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and np.array_equal(
            self.vertices, other.vertices
        )

    def __ne__(self, other):
        return not (self == other)

    @classmethod
    def rectangle(cls, xmin, ymin, xmax, ymax):
        return cls([[xmin, ymin], [xmax, ymin], [xmax, ymax], [xmin, ymax]])

    @classmethod
    def from_list(cls, points):
        return cls(points)

    def to_list(self):
        return self.vertices.tolist()

    @property
    def area(self):
        return _signed_area(self.vertices)

    @property
    def centroid(self):
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        c = cross(v, w)
        a = c.sum() / 2.0
        return np.array(
            [((v[:, 0] + w[:, 0]) * c).sum(), ((v[:, 1] + w[:, 1]) * c).sum()]
        ) / (6.0 * a)

    @property
    def bounds(self):
        """
        ``(xmin, ymin, xmax, ymax)``
        """
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        return (lo[0], lo[1], hi[0], hi[1])

    def edges(self):
        """
        Iterate the polygon edges as ``(start, end)`` point pairs.
        """
        v = self.vertices
        return zip(v, np.roll(v, -1, axis=0))


def _signed_area(vertices):
    v = np.asarray(vertices, dtype=float)
    return 0.5 * float(cross(v, np.roll(v, -1, axis=0)).sum())


def signed_distance_to_line(p, s):
    """
    Signed perpendicular distance of ``p`` from the infinite line through ``s``.

    Positive on the left of the direction ``a -> b``, negative on the right.
    """
    p = as_point(p)
    return float(cross(s.b - s.a, p - s.a) / s.length)


def point_in_polygon(p, poly):
    """
    True iff ``p`` lies inside ``poly`` or on its boundary.
    """
    p = as_point(p)
    v = poly.vertices
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    return bool(np.all(cross(edges, p - v) / lengths >= -GEOMETRY_TOLERANCE))


def point_segment_distance(p, a, b):
    """
    Euclidean distance from ``p`` to the closed segment ``[a, b]``.
    """
    return float(np.hypot(*(p - closest_point_on_segment(p, a, b))))


def closest_point_on_segment(p, a, b):
    p = as_point(p)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = b - a
    denom = float(d.dot(d))
    if denom <= GEOMETRY_TOLERANCE ** 2:
        return a.copy()
    t = min(1.0, max(0.0, float((p - a).dot(d)) / denom))
    return a + t * d


def point_polygon_distance(p, poly):
    """
    Euclidean distance from ``p`` to ``poly``; zero inside.
    """
    if point_in_polygon(p, poly):
        return 0.0
    return min(point_segment_distance(p, a, b) for a, b in poly.edges())


def closest_point_on_hull(p, vertices):
    """
    Closest point to ``p`` on the convex hull of ``vertices``.

    ``vertices`` is either a two point segment or the counter-clockwise vertex
    array of a convex polygon, i.e. everything a wall element of the map can be.
    """
    p = as_point(p)
    vertices = np.asarray(vertices, dtype=float)
    if vertices.shape[0] == 2:
        return closest_point_on_segment(p, vertices[0], vertices[1])
    poly = ConvexPolygon(vertices)
    if point_in_polygon(p, poly):
        return p
    candidates = [closest_point_on_segment(p, a, b) for a, b in poly.edges()]
    distances = [np.hypot(*(p - c)) for c in candidates]
    return candidates[int(np.argmin(distances))]


def point_hull_distance(p, vertices):
    """
    Distance from ``p`` to the convex hull of ``vertices`` (segment or polygon).
    """
    p = as_point(p)
    return float(np.hypot(*(p - closest_point_on_hull(p, vertices))))


def bounding_box(vertex_arrays):
    """
    ``(xmin, ymin, xmax, ymax)`` over a collection of vertex arrays.
    """
    stacked = np.vstack([np.asarray(v, dtype=float) for v in vertex_arrays])
    lo = stacked.min(axis=0)
    hi = stacked.max(axis=0)
    return (float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))
