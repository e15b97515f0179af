# -*- coding: utf-8 -*-


import numpy as np

from flocknav.core.coordination import AgentTask, form_flocks
from flocknav.core.map_generation import generate_grid_map
from flocknav.core.semantic_map import find_route, relevant_elements

from .config import AsvBenchmarkConfig


class FormFlocks(AsvBenchmarkConfig):
    params = ([10, 100, 1000], [1, 3])
    param_names = ["number_agents", "n_ha"]

    def setup(self, number_agents, n_ha):
        rng = np.random.RandomState(42)
        area_ids = ["A{}".format(i) for i in range(number_agents)]
        self.tasks = [
            AgentTask("agent-{}".format(i), list(rng.choice(area_ids, size=6)))
            for i in range(number_agents)
        ]

    def time_form_flocks(self, number_agents, n_ha):
        form_flocks(self.tasks, n_ha)


class MapQueries(AsvBenchmarkConfig):
    def setup(self):
        self.semantic_map = generate_grid_map()
        self.route = find_route(self.semantic_map, "J_00_00", "J_03_03")

    def time_generate_grid_map(self):
        generate_grid_map()

    def time_find_route(self):
        find_route(self.semantic_map, "J_00_00", "J_03_03")

    def time_relevant_elements(self):
        relevant_elements(self.semantic_map, self.route, 0, 2)
