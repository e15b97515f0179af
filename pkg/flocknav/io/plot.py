# -*- coding: utf-8 -*-
"""
SVG rendering of runs.

Figures are created without ``pyplot`` so rendering is free of global state.
Every agent trajectory is a single line tagged with the gid
``trajectory-<agent_id>``.
"""

from io import BytesIO

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.colors import to_rgb
from matplotlib.figure import Figure
from matplotlib.patches import Polygon

from flocknav.core import naming
from flocknav.core.geometry import point_in_polygon

PLOT_MARGIN = 0.05

_RC = {"svg.fonttype": "none", "svg.hashsalt": "flocknav"}


def plot_bounds(semantic_map, margin=PLOT_MARGIN):
    """
    ``(xmin, xmax, ymin, ymax)`` of the plot: the map bounding box grown by
    ``margin`` of its extent on every side.
    """
    xmin, ymin, xmax, ymax = semantic_map.bounding_box()
    dx = (xmax - xmin) * margin
    dy = (ymax - ymin) * margin
    return (xmin - dx, xmax + dx, ymin - dy, ymax + dy)


def agent_color(index):
    return matplotlib.colormaps["tab10"](index % 10)


def _shade(color, factor):
    """
    Darken (``factor < 1``) or lighten (``factor > 1``) ``color``.
    """
    rgb = np.asarray(to_rgb(color))
    if factor <= 1:
        return tuple(rgb * factor)
    return tuple(1.0 - (1.0 - rgb) / factor)


def _to_svg(fig):
    FigureCanvasSVG(fig)
    buf = BytesIO()
    with matplotlib.rc_context(_RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def draw_map(ax, semantic_map):
    for node_id, node in semantic_map.nodes.items():
        if node.kind == naming.AREA:
            ax.add_patch(
                Polygon(
                    node.vertices,
                    closed=True,
                    facecolor="0.93",
                    edgecolor="0.75",
                    linewidth=0.4,
                    gid="area-{}".format(node_id),
                )
            )
        elif node.kind == naming.BOUNDARY:
            ax.add_patch(
                Polygon(
                    node.vertices,
                    closed=True,
                    facecolor="0.3",
                    edgecolor="none",
                    gid="boundary-{}".format(node_id),
                )
            )


def render_run(record, semantic_map, width=6.0):
    """
    Plot the map with the trajectories of ``record``.

    Start areas are shaded in a dark, goal areas in a light tone of the agent
    color; the start pose is marked in the darkest tone.

    Parameters
    ----------
    record: RunRecord
    semantic_map: SemanticMap
    width: float
        Figure width in inches.

    Returns
    -------
    svg: bytes
    """
    xmin, xmax, ymin, ymax = plot_bounds(semantic_map)
    fig = Figure(figsize=(width, width * (ymax - ymin) / (xmax - xmin)))
    ax = fig.add_axes([0, 0, 1, 1])
    draw_map(ax, semantic_map)

    for index, agent_id in enumerate(record.agent_ids):
        color = agent_color(index)
        path = record.agent_path(agent_id)
        if len(path) == 0:
            continue
        start_area = _area_at(semantic_map, path[0])
        goal_area = _area_at(semantic_map, path[-1])
        if start_area is not None:
            ax.add_patch(
                Polygon(
                    semantic_map.polygon(start_area).vertices,
                    closed=True,
                    facecolor=_shade(color, 0.6),
                    alpha=0.35,
                    edgecolor="none",
                    gid="start-area-{}".format(agent_id),
                )
            )
        if goal_area is not None and record.completion_steps.get(agent_id) is not None:
            ax.add_patch(
                Polygon(
                    semantic_map.polygon(goal_area).vertices,
                    closed=True,
                    facecolor=_shade(color, 2.5),
                    alpha=0.5,
                    edgecolor="none",
                    gid="goal-area-{}".format(agent_id),
                )
            )
        ax.plot(
            path[:, 0],
            path[:, 1],
            color=color,
            linewidth=1.5,
            gid="trajectory-{}".format(agent_id),
        )
        ax.plot(
            path[:1, 0],
            path[:1, 1],
            linestyle="none",
            marker="o",
            markersize=4,
            color=_shade(color, 0.5),
            gid="start-{}".format(agent_id),
        )

    ax.set_xlim(xmin, xmax)
    ax.set_ylim(ymin, ymax)
    ax.set_aspect("equal", adjustable="box")
    ax.set_axis_off()
    return _to_svg(fig)


def _area_at(semantic_map, point):
    for area_id in semantic_map.areas:
        if point_in_polygon(point, semantic_map.polygon(area_id)):
            return area_id
    return None


def render_timing(record, width=8.0):
    """
    Per step MPC time and configuration time of ``record``.

    Returns
    -------
    svg: bytes
    """
    fig = Figure(figsize=(width, width * 0.4))
    ax = fig.add_subplot(1, 1, 1)
    steps = np.arange(len(record.mpc_times))
    ax.plot(
        steps,
        np.asarray(record.mpc_times, dtype=float) * 1e3,
        color=agent_color(0),
        linewidth=1.0,
        gid="mpc-time",
        label="MPC time [ms]",
    )
    ax.set_xlabel("step")
    ax.set_ylabel("MPC time [ms]")
    config = np.asarray(record.config_times, dtype=float).reshape(-1, 2)
    twin = ax.twinx()
    twin.plot(
        config[:, 0],
        config[:, 1],
        linestyle="none",
        marker="x",
        color=agent_color(1),
        gid="config-time",
        label="configuration time [s]",
    )
    twin.set_ylabel("configuration time [s]")
    fig.tight_layout()
    return _to_svg(fig)
