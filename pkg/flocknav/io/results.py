# -*- coding: utf-8 -*-
"""
Reading and writing simulation artifacts.

All artifacts live in a ``simplekv`` store; on disk this is the output
directory, opened with ``storefact.get_store_from_url("hfs://...")``::

    results.json                 scenario, aggregated statistics, run summaries
    runs/run-000.json            RunRecord
    trajectories/run-000.csv     step, agent_id, x, y, theta, v, mode
    plots/run-000.svg            trajectory plot

With ``prefix`` set (one per mode when comparing modes) the run artifacts are
stored below ``<prefix>/``.
"""

import logging
import os
from collections import OrderedDict

import storefact

from flocknav.core import naming
from flocknav.core._compat import dump_json, load_json
from flocknav.core.utils import _check_callable
from flocknav.serialization import DataFrameSerializer, default_serializer
from flocknav.sim.record import RunRecord

LOGGER = logging.getLogger(__name__)


def get_store(directory):
    """
    Filesystem store rooted at ``directory``.
    """
    return storefact.get_store_from_url("hfs://{}".format(os.path.abspath(directory)))


def _ensure_store(store):
    if isinstance(store, str):
        return get_store(store)
    if hasattr(store, "put") and hasattr(store, "get"):
        return store
    _check_callable(store)
    return store()


def _prefixed(prefix, key):
    return key if not prefix else "{}/{}".format(prefix.rstrip("/"), key)


def run_record_key(run_index, prefix=None):
    return _prefixed(
        prefix, naming.run_key(naming.RUN_RECORD_PREFIX, run_index, naming.JSON_SUFFIX)
    )


def trajectory_key_prefix(run_index, prefix=None):
    return _prefixed(prefix, naming.run_key(naming.TRAJECTORY_PREFIX, run_index))


def plot_key(run_index, prefix=None):
    return _prefixed(
        prefix, naming.run_key(naming.PLOT_PREFIX, run_index, naming.SVG_SUFFIX)
    )


def write_run(store, record, prefix=None, serializer=None, plot=None):
    """
    Store the record, its trajectory and optionally its plot.

    Parameters
    ----------
    store: simplekv.KeyValueStore or callable or str
    record: RunRecord
    prefix: str, optional
    serializer: DataFrameSerializer, optional
        Defaults to :func:`flocknav.serialization.default_serializer`.
    plot: bytes, optional
        Rendered SVG.

    Returns
    -------
    keys: OrderedDict
        ``record``, ``trajectory`` and ``plot`` keys written.
    """
    store = _ensure_store(store)
    serializer = serializer if serializer is not None else default_serializer()
    keys = OrderedDict()
    keys["record"] = run_record_key(record.run_index, prefix)
    store.put(keys["record"], record.to_json())
    keys["trajectory"] = serializer.store(
        store, trajectory_key_prefix(record.run_index, prefix), record.trajectory_frame()
    )
    if plot is not None:
        keys["plot"] = plot_key(record.run_index, prefix)
        store.put(keys["plot"], plot)
    LOGGER.debug("Stored run %s under %s", record.run_index, list(keys.values()))
    return keys


def write_results(store, scenario, stats_by_mode, prefixed=False):
    """
    Store ``results.json``.

    Parameters
    ----------
    store: simplekv.KeyValueStore or callable or str
    scenario: dict
        Serialized scenario (:meth:`SimConfig.to_dict`).
    stats_by_mode: dict
        Mode letter -> ScenarioStats.
    prefixed: bool
        Whether the run artifacts of every mode are stored below the mode letter.

    Returns
    -------
    key: str
    """
    store = _ensure_store(store)
    results = OrderedDict()
    results["scenario"] = scenario
    results["stats"] = OrderedDict(
        (mode, stats.to_dict()) for mode, stats in stats_by_mode.items()
    )
    results["runs"] = OrderedDict(
        (
            mode,
            [
                OrderedDict(
                    [
                        ("run_index", r.run_index),
                        ("record", run_record_key(r.run_index, mode if prefixed else None)),
                        ("failure", r.failure),
                        ("failure_reason", r.failure_reason),
                        ("completion_step", r.completion_step),
                        ("mean_mpc_time", r.mean_mpc_time),
                    ]
                )
                for r in stats.records
            ],
        )
        for mode, stats in stats_by_mode.items()
    )
    store.put(naming.RESULTS_KEY, dump_json(results, indent=1))
    return naming.RESULTS_KEY


def read_results(store):
    store = _ensure_store(store)
    return load_json(store.get(naming.RESULTS_KEY))


def read_run_record(store, key):
    """
    Load a RunRecord stored under ``key``.
    """
    store = _ensure_store(store)
    return RunRecord.from_json(store.get(key))


def read_trajectory(store, key):
    store = _ensure_store(store)
    return DataFrameSerializer.restore_dataframe(store, key)
