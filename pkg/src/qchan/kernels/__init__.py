"""Backend dispatch for the hot loops.

The numba kernels are used when numba imports and ``QCHAN_JIT`` is not
``0``; otherwise the numpy twins run.  Both modules stay importable so tests
and the benchmark can call either one directly.
"""
from .. import _config
from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # numba is an optional extra
    numba_backend = None

NAMES = ("eigh_herm", "eigh_herm_batch", "svd3", "svd3_batch", "chi",
         "compass_search", "pair_scores", "two_state_grid")


def active():
    if numba_backend is not None and _config.jit_requested():
        return numba_backend
    return numpy_backend


def backend_name():
    return "numba" if active() is numba_backend else "numpy"


def __getattr__(name):
    if name in NAMES:
        return getattr(active(), name)
    raise AttributeError(name)
