# -*- coding: utf-8 -*-
"""
Outcome of simulation runs and their aggregation over a scenario.
"""

import logging
from collections import OrderedDict

import numpy as np
import pandas as pd

from flocknav.core._compat import dump_json, load_json
from flocknav.core.utils import min_avg_max

_logger = logging.getLogger(__name__)

INFEASIBLE = "infeasible"
COLLISION = "collision"
FAILURES = (INFEASIBLE, COLLISION)

MINOR = "minor"
FULL = "full"

TRAJECTORY_COLUMNS = ["step", "agent_id", "x", "y", "theta", "v", "mode"]


class RunRecord(object):
    """
    Everything recorded during one closed-loop run.

    Attributes
    ----------
    trajectory: list of list
        ``[step, agent_id, x, y, theta, v, mode]`` for every agent after every
        control step, starting with the sampled start poses at step 0.
    mpc_times: list of float
        Per control step, the longest solve among the step's flocks in seconds.
    config_times: list of list
        ``[step, seconds]`` for every reconfiguration.
    mode_changes: list of list
        ``[step, agent_id, new_mode]``.
    completion_steps: dict
        Agent id -> step at which the goal area was entered, ``None`` if never.
    failure: str or None
        ``"infeasible"`` or ``"collision"``.
    failure_reason: str or None
        Finer cause: ``"solver"``, ``"iteration_limit"``, ``"step_limit"``,
        ``"agent"`` or ``"boundary"``.
    collisions: list of dict
        Detected footprint overlaps with ``severity`` ``"minor"`` or ``"full"``.
    flock_census: list of list of int
        Flock sizes of every control step.
    """

    def __init__(
        self,
        run_index,
        seed,
        mode,
        agent_ids,
        map_ref=None,
        trajectory=None,
        mpc_times=None,
        config_times=None,
        mode_changes=None,
        completion_steps=None,
        failure=None,
        failure_reason=None,
        collisions=None,
        flock_census=None,
        status_counts=None,
        steps=0,
        min_agent_clearance=None,
        min_wall_clearance=None,
    ):
        if failure is not None and failure not in FAILURES:
            raise ValueError(
                "Unknown failure {!r}, expected one of {}".format(failure, FAILURES)
            )
        self.run_index = run_index
        self.seed = list(seed) if isinstance(seed, (list, tuple)) else seed
        self.mode = mode
        self.agent_ids = list(agent_ids)
        self.map_ref = map_ref
        self.trajectory = trajectory if trajectory is not None else []
        self.mpc_times = mpc_times if mpc_times is not None else []
        self.config_times = config_times if config_times is not None else []
        self.mode_changes = mode_changes if mode_changes is not None else []
        self.completion_steps = (
            completion_steps
            if completion_steps is not None
            else OrderedDict((agent_id, None) for agent_id in self.agent_ids)
        )
        self.failure = failure
        self.failure_reason = failure_reason
        self.collisions = collisions if collisions is not None else []
        self.flock_census = flock_census if flock_census is not None else []
        self.status_counts = status_counts if status_counts is not None else {}
        self.steps = steps
        self.min_agent_clearance = min_agent_clearance
        self.min_wall_clearance = min_wall_clearance

    def __repr__(self):
        return "RunRecord(run_index={}, mode={!r}, failure={!r}, completion={})".format(
            self.run_index, self.mode, self.failure, self.completion_step
        )

    def __eq__(self, other):
        return isinstance(other, RunRecord) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not (self == other)

    @property
    def succeeded(self):
        return self.failure is None

    @property
    def completion_step(self):
        """
        Step at which the last agent reached its goal; ``None`` for failed runs.
        """
        if not self.succeeded:
            return None
        steps = list(self.completion_steps.values())
        if any(step is None for step in steps):
            return None
        return max(steps) if steps else 0

    @property
    def collision_severity(self):
        severities = {c["severity"] for c in self.collisions}
        if FULL in severities:
            return FULL
        if MINOR in severities:
            return MINOR
        return None

    @property
    def mean_mpc_time(self):
        if not self.mpc_times:
            return None
        return float(np.mean(self.mpc_times))

    @property
    def n_reconfigurations(self):
        return len(self.config_times)

    def trajectory_frame(self):
        """
        The trajectory as a DataFrame with the columns ``step, agent_id, x, y,
        theta, v, mode``.
        """
        df = pd.DataFrame(self.trajectory, columns=TRAJECTORY_COLUMNS)
        dtypes = {column: "float64" for column in ("x", "y", "theta", "v")}
        dtypes.update({"step": "int64", "mode": "int64"})
        return df.astype(dtypes)

    def agent_path(self, agent_id):
        """
        ``(n, 2)`` array of the recorded positions of one agent.
        """
        rows = [row[2:4] for row in self.trajectory if row[1] == agent_id]
        return np.asarray(rows, dtype=float).reshape(-1, 2)

    def to_dict(self, timing=True):
        dct = OrderedDict(
            [
                ("run_index", self.run_index),
                ("seed", self.seed),
                ("mode", self.mode),
                ("agent_ids", list(self.agent_ids)),
                ("map", self.map_ref),
                ("failure", self.failure),
                ("failure_reason", self.failure_reason),
                ("collision_severity", self.collision_severity),
                ("completion_step", self.completion_step),
                ("completion_steps", OrderedDict(self.completion_steps)),
                ("steps", self.steps),
                ("n_reconfigurations", self.n_reconfigurations),
                ("mean_mpc_time", self.mean_mpc_time),
                ("min_agent_clearance", self.min_agent_clearance),
                ("min_wall_clearance", self.min_wall_clearance),
                ("mpc_times", list(self.mpc_times)),
                ("config_times", [list(c) for c in self.config_times]),
                ("mode_changes", [list(c) for c in self.mode_changes]),
                ("collisions", list(self.collisions)),
                ("flock_census", [list(c) for c in self.flock_census]),
                ("status_counts", OrderedDict(sorted(self.status_counts.items()))),
                ("trajectory", [list(row) for row in self.trajectory]),
            ]
        )
        if not timing:
            dct.pop("mean_mpc_time")
            dct["mpc_times"] = len(self.mpc_times)
            dct["config_times"] = [step for step, _ in self.config_times]
        return dct

    @staticmethod
    def from_dict(dct):
        return RunRecord(
            run_index=dct["run_index"],
            seed=dct["seed"],
            mode=dct["mode"],
            agent_ids=dct["agent_ids"],
            map_ref=dct.get("map"),
            trajectory=dct.get("trajectory"),
            mpc_times=dct.get("mpc_times"),
            config_times=dct.get("config_times"),
            mode_changes=dct.get("mode_changes"),
            completion_steps=OrderedDict(dct.get("completion_steps", {})),
            failure=dct.get("failure"),
            failure_reason=dct.get("failure_reason"),
            collisions=dct.get("collisions"),
            flock_census=dct.get("flock_census"),
            status_counts=dct.get("status_counts"),
            steps=dct.get("steps", 0),
            min_agent_clearance=dct.get("min_agent_clearance"),
            min_wall_clearance=dct.get("min_wall_clearance"),
        )

    def to_json(self):
        return dump_json(self.to_dict(), indent=1)

    @staticmethod
    def from_json(buf):
        return RunRecord.from_dict(load_json(buf))


class ScenarioStats(object):
    """
    Aggregate of the runs of one scenario configuration.

    Time statistics are ``[min, avg, max]`` over successful runs only, or
    ``None`` if no run succeeded. Flock statistics average the per step flock
    count and mean flock size over all steps of all runs.
    """

    def __init__(
        self,
        mode,
        n_runs,
        n_success,
        n_infeasible,
        n_collision,
        n_minor_collision,
        completion,
        mpc_time,
        config_time,
        mean_flock_count,
        mean_flock_size,
        records=None,
    ):
        self.mode = mode
        self.n_runs = n_runs
        self.n_success = n_success
        self.n_infeasible = n_infeasible
        self.n_collision = n_collision
        self.n_minor_collision = n_minor_collision
        self.completion = completion
        self.mpc_time = mpc_time
        self.config_time = config_time
        self.mean_flock_count = mean_flock_count
        self.mean_flock_size = mean_flock_size
        self.records = records if records is not None else []

    def __repr__(self):
        return (
            "ScenarioStats(mode={!r}, runs={}, success={}, infeasible={}, "
            "collision={})".format(
                self.mode,
                self.n_runs,
                self.n_success,
                self.n_infeasible,
                self.n_collision,
            )
        )

    @staticmethod
    def from_records(records, mode=None):
        records = list(records)
        if mode is None and records:
            mode = records[0].mode
        successful = [r for r in records if r.succeeded]
        counts = []
        sizes = []
        for record in records:
            for census in record.flock_census:
                if census:
                    counts.append(len(census))
                    sizes.append(float(np.mean(census)))
        stats = ScenarioStats(
            mode=mode,
            n_runs=len(records),
            n_success=len(successful),
            n_infeasible=sum(r.failure == INFEASIBLE for r in records),
            n_collision=sum(r.failure == COLLISION for r in records),
            n_minor_collision=sum(
                r.failure == COLLISION and r.collision_severity == MINOR for r in records
            ),
            completion=min_avg_max(r.completion_step for r in successful),
            mpc_time=min_avg_max(t for r in successful for t in r.mpc_times),
            config_time=min_avg_max(t for r in successful for _, t in r.config_times),
            mean_flock_count=float(np.mean(counts)) if counts else None,
            mean_flock_size=float(np.mean(sizes)) if sizes else None,
            records=records,
        )
        _logger.info("Aggregated %r", stats)
        return stats

    def to_dict(self):
        return OrderedDict(
            [
                ("mode", self.mode),
                ("runs", self.n_runs),
                ("success", self.n_success),
                ("infeasible", self.n_infeasible),
                ("collision", self.n_collision),
                ("minor_collision", self.n_minor_collision),
                ("completion", self.completion),
                ("mpc_time", self.mpc_time),
                ("config_time", self.config_time),
                ("mean_flock_count", self.mean_flock_count),
                ("mean_flock_size", self.mean_flock_size),
            ]
        )

    @staticmethod
    def from_dict(dct, records=None):
        return ScenarioStats(
            mode=dct["mode"],
            n_runs=dct["runs"],
            n_success=dct["success"],
            n_infeasible=dct["infeasible"],
            n_collision=dct["collision"],
            n_minor_collision=dct.get("minor_collision", 0),
            completion=dct["completion"],
            mpc_time=dct["mpc_time"],
            config_time=dct["config_time"],
            mean_flock_count=dct["mean_flock_count"],
            mean_flock_size=dct["mean_flock_size"],
            records=records,
        )

    def relative_completion(self, reference):
        """
        ``[min, avg, max]`` of the completion step of each run divided by the
        one of the run with the same index in ``reference``.

        Only runs that succeeded in both are paired; ``None`` if there are none.
        """
        reference_steps = {
            r.run_index: r.completion_step for r in reference.records if r.succeeded
        }
        return min_avg_max(
            r.completion_step / float(reference_steps[r.run_index])
            for r in self.records
            if r.completion_step is not None and reference_steps.get(r.run_index)
        )

    def summary_row(self, reference=None):
        """
        One row of the summary table: completion in steps, MPC time in
        milliseconds, configuration time in seconds. With a ``reference``
        (the Never mode), completion relative to it is added as
        ``completion_vs_never``.
        """

        def fmt(values, scale=1.0, digits=1):
            if values is None:
                return "-"
            return "[{}]".format(
                ", ".join("{:.{}f}".format(v * scale, digits) for v in values)
            )

        flocks = (
            "-"
            if self.mean_flock_count is None
            else "{:.1f} / {:.1f}".format(self.mean_flock_count, self.mean_flock_size)
        )
        row = OrderedDict(
            [
                ("mode", self.mode),
                ("success", "{} / {}".format(self.n_success, self.n_runs)),
                (
                    "infeasible / collision",
                    "{} / {}".format(self.n_infeasible, self.n_collision),
                ),
                ("completion [steps]", fmt(self.completion)),
            ]
        )
        if reference is not None:
            row["completion_vs_never"] = fmt(
                self.relative_completion(reference), 1.0, 2
            )
        row["mpc [ms]"] = fmt(self.mpc_time, 1e3)
        row["config [s]"] = fmt(self.config_time, 1.0, 2)
        row["flocks / size"] = flocks
        return row


def summary_frame(stats):
    """
    Side by side summary of several :class:`ScenarioStats`.

    If one of them is the Never mode, every row also reports its completion
    relative to the Never runs with the same run index.
    """
    stats = list(stats)
    reference = next((s for s in stats if s.mode == "N"), None)
    return pd.DataFrame([s.summary_row(reference) for s in stats]).set_index("mode")
