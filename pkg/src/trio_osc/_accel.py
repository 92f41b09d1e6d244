"""Numba switch.

Kernels are written once as plain Python loops and compiled with numba when
it is importable and not disabled via ``TRIO_DISABLE_NUMBA=1``.  When numba is
off, callers select the vectorised numpy path instead of running the loops
in the interpreter.
"""

import os

_DISABLED = os.environ.get("TRIO_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    NUMBA_AVAILABLE = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    if NUMBA_AVAILABLE:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def use_numba():
    return NUMBA_AVAILABLE
