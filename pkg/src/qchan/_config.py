"""Tolerance defaults and backend selection.

``QCHAN_TOL`` overrides the default absolute tolerance (1e-9).
``QCHAN_JIT=0`` disables the numba kernels and routes every hot loop
through the pure-numpy implementations.
``QCHAN_DEBUG=1`` makes :func:`qchan.cpcheck.is_cp` cross-check every
verdict against the Choi eigenvalue oracle.
"""
import os

DEFAULT_TOL = 1e-9

# routing band around |t3| + |lambda3| = 1
BOUNDARY_BAND = 1e-7

# |lambda| comparisons and "t = 0" in the extremality decision table
CLASSIFY_TOL = 1e-7

# relative eigenvalue cutoff for Choi rank
RANK_TOL = 1e-8


def default_tol():
    raw = os.environ.get("QCHAN_TOL")
    if not raw:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"QCHAN_TOL must be a float, got {raw!r}") from None
    if not value > 0:
        raise ValueError(f"QCHAN_TOL must be positive, got {raw!r}")
    return value


def resolve_tol(tol):
    return default_tol() if tol is None else float(tol)


def jit_requested():
    return os.environ.get("QCHAN_JIT", "1").strip().lower() not in ("0", "false", "no", "off")


def debug_enabled():
    return os.environ.get("QCHAN_DEBUG", "0").strip().lower() in ("1", "true", "yes", "on")
