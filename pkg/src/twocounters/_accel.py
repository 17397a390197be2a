"""Backend selection for the hot kernels.

Kernels are written as plain loops over numpy arrays. They are compiled with
``numba.njit`` unless ``TWOCOUNTERS_NO_NUMBA`` is set to a non-empty value
other than ``0`` (or numba is not importable), in which case the same
functions run as ordinary Python over numpy arrays.
"""
import os

_flag = os.environ.get("TWOCOUNTERS_NO_NUMBA", "")
DISABLED = _flag not in ("", "0")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USING_NUMBA = numba is not None and not DISABLED


def jit(fn):
    if USING_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend_name():
    return "numba" if USING_NUMBA else "numpy"
