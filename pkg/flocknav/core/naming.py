# -*- coding: utf-8 -*-

"""
Global naming constants and defaults
"""

# Geometry
GEOMETRY_TOLERANCE = 1e-9

# Dynamic limits of the simulated agents
DEFAULT_V_MIN = 0.0
DEFAULT_V_MAX = 1.0
DEFAULT_A_MIN = -0.5
DEFAULT_A_MAX = 0.5
DEFAULT_OMEGA_MIN = -0.5
DEFAULT_OMEGA_MAX = 0.5

# Agent footprint
DEFAULT_AGENT_RADIUS = 0.4
DEFAULT_SOFT_RADIUS = 0.45

# MPC configuration
DEFAULT_DT = 0.5
DEFAULT_FREQUENCY = 4.0
DEFAULT_PREDICTION_HORIZON = 25
DEFAULT_INPUT_COST = ((0.05, 0.0), (0.0, 0.5))
DEFAULT_QUADRATIC_OBJECTIVE_WEIGHT = 1.0
DEFAULT_LINEAR_OBJECTIVE_WEIGHT = 10.0
DEFAULT_ELEMENT_HORIZON = 2
DEFAULT_AGENT_HORIZON = 1
DEFAULT_SOFT_PENALTY = 1e3

# Solver
DEFAULT_MAX_ITERATIONS = 150
DEFAULT_INNER_MAX_ITERATIONS = 200
DEFAULT_SOLVER_TOLERANCE = 1e-4
DEFAULT_INFEASIBILITY_THRESHOLD = 1e-2
DEFAULT_INFEASIBILITY_STALL = 20
DEFAULT_INITIAL_PENALTY = 10.0
MAX_PENALTY = 1e8
# penalty carried over from the previous step is capped at this value
MAX_WARM_PENALTY = 1e4

# Simulation
DEFAULT_MAX_STEPS = 400
DEFAULT_PLANT_SUBSTEPS = 2
DEFAULT_PLANT_INTEGRATOR = "euler"
PLANT_INTEGRATORS = ("euler", "rk4")
MINOR_COLLISION_OVERLAP = 0.01
MAX_SAMPLING_REJECTIONS = 10000

# Benchmark environment
DEFAULT_GRID_COLS = 4
DEFAULT_GRID_ROWS = 4
DEFAULT_CORRIDOR_WIDTH = 2.0
DEFAULT_BLOCK = (4.0, 5.0)
DEFAULT_MAX_AREA_LENGTH = 2.5
DEFAULT_WALL_THICKNESS = 0.2

# Node kinds of the semantic map file format
AREA = "area"
INTERFACE = "interface"
BOUNDARY = "boundary"

# Artifact keys
RESULTS_KEY = "results.json"
RUN_RECORD_PREFIX = "runs/run-"
TRAJECTORY_PREFIX = "trajectories/run-"
PLOT_PREFIX = "plots/run-"
JSON_SUFFIX = ".json"
SVG_SUFFIX = ".svg"

# Map references inside scenario files
BUILTIN_PREFIX = "builtin:"
BUILTIN_BENCHMARK_MAP = "benchmark"
BUILTIN_EXAMPLE_MAP = "example"


def run_key(prefix, run_index, suffix=""):
    return "{prefix}{index:03d}{suffix}".format(
        prefix=prefix, index=run_index, suffix=suffix
    )
