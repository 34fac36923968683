"""Numba switch.

Set ``ECH_KIT_DISABLE_JIT=1`` to run every kernel on its pure-numpy path.
The flag is read once at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("ECH_KIT_DISABLE_JIT", "").strip().lower()
JIT_DISABLED = _flag not in ("", "0", "false", "no")
JIT_AVAILABLE = numba is not None
JIT_ENABLED = JIT_AVAILABLE and not JIT_DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity otherwise.

    Compiled variants are always built when numba exists so that the
    benchmark can compare both paths in one process; ``JIT_ENABLED`` only
    decides which one the public kernels dispatch to.
    """
    if not JIT_AVAILABLE:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
    return numba.njit(*args, **kwargs)
