"""Backend switch for the hot lattice kernels.

Set ``TAXI_EM_BACKEND=numpy`` to force the pure-numpy path even when numba
is importable.  Anything else (or unset) selects numba when available.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

BACKEND_ENV = "TAXI_EM_BACKEND"


def requested_backend():
    value = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    return "numpy" if value == "numpy" else "numba"


USE_NUMBA = HAVE_NUMBA and requested_backend() == "numba"


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, identity decorator otherwise.

    Kernels are always compiled if numba exists so the benchmark can compare
    both paths; ``USE_NUMBA`` only decides which one the library calls.
    """
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn
