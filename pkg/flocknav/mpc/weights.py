# -*- coding: utf-8 -*-
"""
Gating of the objective terms by the previous prediction.
"""

import numpy as np

from flocknav.core.geometry import point_in_polygon


def update_objective_weights(prev_states, elements, semantic_map):
    """
    Binary weights of the objective lines of one agent.

    The objective of slot 0 always counts. The objective of slot ``s`` counts
    if slot ``s - 1`` counts and some knot of the previous predicted state
    trajectory lies inside the slot's area ``elements.areas[s]``.

    Parameters
    ----------
    prev_states: numpy.ndarray or None
        Previous predicted states, shape ``(K, 4)``; ``None`` before the first solve.
    elements: RelevantElements
    semantic_map: SemanticMap

    Returns
    -------
    weights: numpy.ndarray
        One entry per objective of ``elements``.
    """
    n = len(elements.objectives)
    weights = np.zeros(n)
    if n == 0:
        return weights
    weights[0] = 1.0
    if prev_states is None:
        return weights
    points = np.asarray(prev_states, dtype=float)[:, :2]
    for s in range(1, n):
        polygon = semantic_map.polygon(elements.areas[s])
        if not any(point_in_polygon(p, polygon) for p in points):
            break
        weights[s] = 1.0
    return weights
