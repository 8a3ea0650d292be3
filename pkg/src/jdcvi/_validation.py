"""Input validation helpers shared by the estimators and functional API."""

import numbers

import numpy as np
from sklearn.utils import check_array


def check_points(X, name="X"):
    """Return ``X`` as a finite float64 ``(n, d)`` array.

    A 1-D input is read as ``n`` one-dimensional points, which is the
    natural way to write small examples.
    """
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return check_array(arr, dtype=np.float64, ensure_2d=True, input_name=name)


def check_labels(labels, n, name="labels"):
    lab = np.asarray(labels)
    if lab.ndim != 1 or lab.shape[0] != n:
        raise ValueError(f"{name} must be a 1-D array of length {n}, got shape {lab.shape}")
    if lab.size and not np.issubdtype(lab.dtype, np.integer):
        as_int = lab.astype(np.int64)
        if not np.array_equal(as_int, lab):
            raise ValueError(f"{name} must hold integer ids")
        lab = as_int
    return lab.astype(np.int64)


def check_count(value, name, minimum=1):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_random_seed(seed):
    """Normalise ``seed`` to something :func:`numpy.random.default_rng` accepts."""
    if seed is None or isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, numbers.Integral):
        return int(seed)
    raise TypeError(f"seed must be an int, a Generator or None, got {seed!r}")


def freeze(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr
