import numpy as np


def _check_callable(store_factory, obj_type="store"):
    if not callable(store_factory):
        raise TypeError("{} must be a factory function".format(obj_type))


def ensure_positive(value, name):
    if not value > 0:
        raise ValueError("`{}` must be positive, got {!r}".format(name, value))
    return value


def ensure_count(value, name, minimum=0):
    if int(value) != value or value < minimum:
        raise ValueError(
            "`{}` must be an integer >= {}, got {!r}".format(name, minimum, value)
        )
    return int(value)


def as_matrix(value, shape, name):
    """
    Convert ``value`` into a float array of ``shape``; scalars are put on the diagonal.
    """
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.eye(shape[0]) * float(arr)
    elif arr.ndim == 1 and arr.shape[0] == shape[0]:
        arr = np.diag(arr)
    if arr.shape != tuple(shape):
        raise ValueError(
            "`{}` must have shape {}, got {}".format(name, tuple(shape), arr.shape)
        )
    return arr


def min_avg_max(values):
    """
    ``[min, avg, max]`` of ``values`` or ``None`` if there are none.
    """
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        return None
    return [float(values.min()), float(values.mean()), float(values.max())]
