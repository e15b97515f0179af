# -*- coding: utf-8 -*-


import shutil
import tempfile

from flocknav.io.results import get_store, read_trajectory, write_run
from flocknav.serialization import CsvSerializer
from flocknav.sim.record import RunRecord

from .config import AsvBenchmarkConfig


class WriteRun(AsvBenchmarkConfig):
    params = ([10, 400], [False, True])
    param_names = ["number_steps", "compress"]

    def setup(self, number_steps, compress):
        agent_ids = ["a{}".format(i) for i in range(4)]
        trajectory = [
            [step, agent_id, 0.1 * step, float(i), 0.0, 0.5, 0]
            for step in range(number_steps)
            for i, agent_id in enumerate(agent_ids)
        ]
        self.record = RunRecord(
            0,
            [0, 0],
            "D",
            agent_ids,
            map_ref="builtin:benchmark",
            trajectory=trajectory,
            mpc_times=[0.01] * number_steps,
        )
        self.serializer = CsvSerializer(compress=compress)
        self.tmp_dir = tempfile.mkdtemp()
        self.store = get_store(self.tmp_dir)
        keys = write_run(self.store, self.record, serializer=self.serializer)
        self.key = keys["trajectory"]

    def teardown(self, number_steps, compress):
        shutil.rmtree(self.tmp_dir)

    def time_write_run(self, number_steps, compress):
        write_run(self.store, self.record, serializer=self.serializer)

    def time_read_trajectory(self, number_steps, compress):
        read_trajectory(self.store, self.key)
