# -*- coding: utf-8 -*-


import pytest

from flocknav.core import naming
from flocknav.core.geometry import point_in_polygon
from flocknav.core.map_generation import (
    block_id,
    generate_grid_map,
    horizontal_segment_id,
    interface_id,
    intersection_id,
    outer_wall_id,
    vertical_segment_id,
)
from flocknav.core.semantic_map import find_route, relevant_elements


def test_ids():
    assert intersection_id(1, 2) == "J_01_02"
    assert horizontal_segment_id(0, 3, 1) == "H_00_03_1"
    assert vertical_segment_id(2, 0, 0) == "V_02_00_0"
    assert block_id(1, 1) == "B_01_01"
    assert interface_id("J_00_00", "H_00_00_0") == "I_J_00_00_H_00_00_0"
    assert outer_wall_id("J_00_00", "S") == "O_J_00_00_S"


def test_benchmark_workspace(grid_map):
    xmin, ymin, xmax, ymax = grid_map.bounding_box()
    assert 19.0 <= xmax - xmin <= 21.0
    assert 22.0 <= ymax - ymin <= 24.0


def test_minimal_grid(small_grid_map):
    assert len([a for a in small_grid_map.areas if a.startswith("J_")]) == 4
    for node_id in small_grid_map.interfaces:
        assert len(small_grid_map.areas_of(node_id)) == 2
    for node_id in small_grid_map.boundaries:
        assert small_grid_map.areas_of(node_id)
    # every area is reachable from the origin intersection
    for area_id in small_grid_map.areas:
        assert find_route(small_grid_map, "J_00_00", area_id)[-1] == area_id


def test_corridor_segments(grid_map):
    # 4 m long horizontal corridors are cut into two 2 m areas
    left = grid_map.polygon(horizontal_segment_id(0, 0, 0))
    right = grid_map.polygon(horizontal_segment_id(0, 0, 1))
    assert left.bounds == (2.0, 0.0, 4.0, 2.0)
    assert right.bounds == (4.0, 0.0, 6.0, 2.0)
    assert horizontal_segment_id(0, 0, 2) not in grid_map.nodes
    # 5 m long vertical corridors are cut into two 2.5 m areas
    lower = grid_map.polygon(vertical_segment_id(0, 0, 0))
    assert lower.bounds == (0.0, 2.0, 2.0, 4.5)


def test_objectives_point_into_the_forward_area(grid_map):
    for node_id in grid_map.interfaces:
        node = grid_map.node(node_id)
        forward = node.objective.forward_area
        segment = node.objective.oriented_towards(forward)
        centroid = grid_map.polygon(forward).centroid
        # the forward area lies on the negative side
        assert segment.normal.dot(centroid - segment.a) < 0


def test_block_boundaries_separate_corridors(grid_map):
    block = grid_map.polygon(block_id(0, 0))
    assert block.bounds == (2.0, 2.0, 6.0, 7.0)
    assert not point_in_polygon((1.0, 1.0), block)


def test_corridor_walls_of_a_straight_route(grid_map):
    route = find_route(grid_map, "J_00_01", "J_01_01")
    elements = relevant_elements(grid_map, route, 1, 1)
    assert block_id(0, 0) in elements.walls
    assert block_id(0, 1) in elements.walls


@pytest.mark.parametrize(
    "kwargs",
    [
        {"cols": 1},
        {"rows": 0},
        {"corridor_width": 0.0},
        {"block": (4.0,)},
        {"block": (4.0, -1.0)},
        {"max_area_length": 0.0},
    ],
)
def test_invalid_dimensions(kwargs):
    with pytest.raises(ValueError):
        generate_grid_map(**kwargs)


def test_grid_defaults_in_naming(grid_map):
    assert len([a for a in grid_map.areas if a.startswith("J_")]) == (
        naming.DEFAULT_GRID_COLS * naming.DEFAULT_GRID_ROWS
    )
