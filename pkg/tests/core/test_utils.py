# -*- coding: utf-8 -*-


import numpy as np
import pytest

from flocknav.core.utils import (
    _check_callable,
    as_matrix,
    ensure_count,
    ensure_positive,
    min_avg_max,
)


def test_check_callable():
    _check_callable(lambda: None)
    with pytest.raises(TypeError, match="store must be a factory function"):
        _check_callable(object())


def test_ensure_positive():
    assert ensure_positive(0.1, "x") == 0.1
    with pytest.raises(ValueError, match="`x` must be positive"):
        ensure_positive(0, "x")


@pytest.mark.parametrize("value, minimum", [(-1, 0), (1.5, 0), (1, 2)])
def test_ensure_count_errors(value, minimum):
    with pytest.raises(ValueError):
        ensure_count(value, "n", minimum=minimum)


def test_ensure_count():
    assert ensure_count(3.0, "n") == 3
    assert isinstance(ensure_count(3.0, "n"), int)


def test_as_matrix():
    np.testing.assert_array_equal(as_matrix(1.0, (2, 2), "R"), np.eye(2))
    with pytest.raises(ValueError, match="`R` must have shape"):
        as_matrix(np.ones((3, 3)), (2, 2), "R")


def test_min_avg_max():
    assert min_avg_max([1.0, 2.0, 6.0]) == [1.0, 3.0, 6.0]
    assert min_avg_max([]) is None
    assert min_avg_max(x for x in (4,)) == [4.0, 4.0, 4.0]
