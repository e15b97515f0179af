# -*- coding: utf-8 -*-


from collections import OrderedDict

import pandas as pd
import pytest

from flocknav.io.results import (
    get_store,
    plot_key,
    read_results,
    read_run_record,
    read_trajectory,
    run_record_key,
    trajectory_key_prefix,
    write_results,
    write_run,
)
from flocknav.serialization import CsvSerializer
from flocknav.sim.record import INFEASIBLE, RunRecord, ScenarioStats


def _record(run_index, failure=None):
    return RunRecord(
        run_index,
        [0, run_index],
        "D",
        ["a0"],
        map_ref="builtin:example",
        trajectory=[[0, "a0", -3.0, 0.0, 1.5, 0.0, 0], [1, "a0", -3.0, 0.1, 1.5, 0.2, 0]],
        mpc_times=[0.02],
        config_times=[[0, 0.1]],
        completion_steps=OrderedDict([("a0", None if failure else 1)]),
        failure=failure,
        flock_census=[[1]],
    )


def test_keys():
    assert run_record_key(0) == "runs/run-000.json"
    assert trajectory_key_prefix(12) == "trajectories/run-012"
    assert plot_key(3) == "plots/run-003.svg"
    assert run_record_key(1, prefix="D") == "D/runs/run-001.json"
    assert plot_key(1, prefix="N/") == "N/plots/run-001.svg"


def test_write_run(store):
    record = _record(0)
    keys = write_run(store, record, plot=b"<svg/>")
    assert list(keys.values()) == [
        "runs/run-000.json",
        "trajectories/run-000.csv",
        "plots/run-000.svg",
    ]
    assert read_run_record(store, keys["record"]) == record
    df = read_trajectory(store, keys["trajectory"])
    assert list(df.columns) == ["step", "agent_id", "x", "y", "theta", "v", "mode"]
    pd.testing.assert_frame_equal(df, record.trajectory_frame())
    assert store.get(keys["plot"]) == b"<svg/>"


def test_write_run_with_prefix_and_serializer(store):
    keys = write_run(store, _record(2), prefix="A", serializer=CsvSerializer(compress=True))
    assert keys["trajectory"] == "A/trajectories/run-002.csv.gz"
    assert "plot" not in keys
    assert len(read_trajectory(store, keys["trajectory"])) == 2


def test_store_arguments(tmpdir, store_factory):
    directory = tmpdir.join("out").strpath
    write_run(directory, _record(0))
    assert read_run_record(get_store(directory), "runs/run-000.json").run_index == 0
    write_run(store_factory, _record(1))
    assert "runs/run-001.json" in set(store_factory().keys())
    with pytest.raises(TypeError):
        write_run(42, _record(0))


def test_write_results(store):
    stats = OrderedDict(
        [
            ("A", ScenarioStats.from_records([_record(0), _record(1, INFEASIBLE)])),
            ("N", ScenarioStats.from_records([_record(0)])),
        ]
    )
    scenario = {"map": "builtin:example", "mode": "D"}
    assert write_results(store, scenario, stats, prefixed=True) == "results.json"
    results = read_results(store)
    assert results["scenario"] == scenario
    assert list(results["stats"]) == ["A", "N"]
    assert results["stats"]["A"]["runs"] == 2
    assert results["stats"]["A"]["infeasible"] == 1
    runs = results["runs"]["A"]
    assert [r["record"] for r in runs] == ["A/runs/run-000.json", "A/runs/run-001.json"]
    assert runs[1]["failure"] == INFEASIBLE
    assert runs[0]["completion_step"] == 1


def test_write_results_without_prefix(store):
    stats = {"D": ScenarioStats.from_records([_record(0)])}
    write_results(store, {}, stats)
    assert read_results(store)["runs"]["D"][0]["record"] == "runs/run-000.json"
