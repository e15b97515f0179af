# -*- coding: utf-8 -*-
"""
Running all runs of a scenario and comparing cooperation modes.
"""

import logging
from collections import OrderedDict

import dask
from dask import delayed

from flocknav.core.utils import ensure_count
from flocknav.sim.config import CooperationMode
from flocknav.sim.record import ScenarioStats
from flocknav.sim.run import run_once

LOGGER = logging.getLogger(__name__)


def run_records(config, runs=None, jobs=1):
    """
    Simulate the runs of ``config``.

    Runs use the random streams ``[config.seed, i]`` and are dispatched to
    ``jobs`` worker processes; with ``jobs=1`` they run in this process.

    Returns
    -------
    records: list of RunRecord
        Ordered by run index.
    """
    runs = ensure_count(config.runs if runs is None else runs, "runs", minimum=1)
    jobs = ensure_count(jobs, "jobs", minimum=1)
    tasks = [delayed(run_once)(config, run_index) for run_index in range(runs)]
    if jobs > 1:
        records = dask.compute(*tasks, scheduler="processes", num_workers=jobs)
    else:
        records = dask.compute(*tasks, scheduler="synchronous")
    return list(records)


def run_scenario(config, runs=None, jobs=1):
    """
    Simulate ``runs`` runs of ``config`` and aggregate them.

    Returns
    -------
    stats: ScenarioStats
        The records are available as ``stats.records``.
    """
    records = run_records(config, runs=runs, jobs=jobs)
    return ScenarioStats.from_records(records, mode=config.mode.value)


def compare_configurations(config, runs=None, jobs=1, modes=None):
    """
    Run the same scenario in several cooperation modes.

    Every mode uses identical seeds, hence identical start poses.

    Returns
    -------
    OrderedDict
        Mode letter -> ScenarioStats, in the order Always, Dynamic, Never.
    """
    modes = [CooperationMode.parse(m) for m in (modes or list(CooperationMode))]
    result = OrderedDict()
    for mode in modes:
        LOGGER.info("Running %r in mode %s", config, mode.value)
        result[mode.value] = run_scenario(config.copy(mode=mode), runs=runs, jobs=jobs)
    return result


def compare_route_sets(config, runs=None, jobs=1, modes=None):
    """
    :func:`compare_configurations` for every route set of the scenario.

    Returns
    -------
    OrderedDict
        Route set index -> mode letter -> ScenarioStats.
    """
    result = OrderedDict()
    for index in range(len(config.route_sets)):
        result[index] = compare_configurations(
            config.select_route_set(index), runs=runs, jobs=jobs, modes=modes
        )
    return result
