"""Numba acceleration switch.

Hot numeric kernels (simplex pivoting, cluster assignment) are compiled with
numba when available. Setting the environment variable ``CIESDRO_NO_NUMBA=1``
selects the pure-numpy fallback implementations instead; results are
identical, only speed differs (see benchmarks/bench_kernels.py).
"""

import os

NUMBA_DISABLED = os.environ.get("CIESDRO_NO_NUMBA", "").strip().lower() in {
    "1", "true", "yes", "on",
}

try:
    if NUMBA_DISABLED:
        raise ImportError
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _numba_njit = None

USING_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def maybe_jit(fn=None, **kwargs):
    """Apply ``numba.njit`` when enabled, otherwise return the function as is."""
    kwargs.setdefault("cache", True)

    def wrap(f):
        if USING_NUMBA:
            return _numba_njit(**kwargs)(f)
        return f

    if fn is not None:
        return wrap(fn)
    return wrap
