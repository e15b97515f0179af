# -*- coding: utf-8 -*-


from flocknav.core.coordination import AgentTask
from flocknav.core.map_generation import generate_grid_map
from flocknav.core.params import MpcParams
from flocknav.mpc.problem import build_problem
from flocknav.mpc.solver import solve
from flocknav.sim.config import load_builtin_scenario
from flocknav.sim.run import run_once

from .config import AsvBenchmarkConfig

# Agents in the first horizontal corridor, driving towards each other.
_TASKS = [
    AgentTask("a0", ["H_00_00_0", "H_00_00_1", "J_01_00"]),
    AgentTask("a1", ["H_00_00_1", "H_00_00_0", "J_00_00"]),
    AgentTask("a2", ["J_00_00", "H_00_00_0", "H_00_00_1"]),
    AgentTask("a3", ["J_01_00", "H_00_00_1", "H_00_00_0"]),
]
_STATES = {
    "a0": (3.0, 0.6, 0.0, 0.0),
    "a1": (5.0, 1.4, 3.14, 0.0),
    "a2": (1.0, 1.0, 0.0, 0.0),
    "a3": (7.0, 1.0, 3.14, 0.0),
}


class Mpc(AsvBenchmarkConfig):
    params = ([1, 2, 4], [10, 20])
    param_names = ["number_agents", "n_t"]
    timeout = 120

    def setup(self, number_agents, n_t):
        self.semantic_map = generate_grid_map()
        self.params = MpcParams(n_t=n_t)
        self.flock = [task.agent_id for task in _TASKS[:number_agents]]
        self.problem = self._build()

    def _build(self):
        return build_problem(
            self.flock, _TASKS, self.semantic_map, self.params, _STATES
        )

    def time_build_problem(self, number_agents, n_t):
        self._build()

    def time_evaluate_constraints(self, number_agents, n_t):
        self.problem.ineq_jacobian(self.problem.z0)

    def time_solve(self, number_agents, n_t):
        solve(self.problem)


class Simulation(AsvBenchmarkConfig):
    params = ["A", "D", "N"]
    param_names = ["mode"]
    timeout = 600

    def setup(self, mode):
        self.config = load_builtin_scenario("scenario1", mode=mode, max_steps=20)

    def time_run_once(self, mode):
        run_once(self.config)
