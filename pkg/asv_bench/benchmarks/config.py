# -*- coding: utf-8 -*-

import timeit


class AsvBenchmarkConfig(object):
    """
    Defaults shared by all flocknav benchmarks.
    """

    # Solver timings are wall time; asv measures process time by default
    timer = timeit.default_timer
    # A solve takes up to a few seconds, keep the repeats bounded
    repeat = (3, 10, 60.0)
    timeout = 300
