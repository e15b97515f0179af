"""
Functions to measure wall time.

flocknav modules that measure solver or configuration time should do so only
via this module. This allows tests to monkeypatch the methods in this module
to obtain reproducible timing fields.
"""

import time


def perf_counter():
    """
    High resolution wall clock in seconds

    Same as time.perf_counter
    """
    return time.perf_counter()
