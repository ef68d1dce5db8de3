"""Optional numba acceleration.

Kernels are written in the subset of Python that numba compiles. Setting
``L2PLAN_DISABLE_JIT=1`` (or running without numba installed) leaves them
as plain Python so the two paths can be compared and debugged.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_DISABLED = os.environ.get("L2PLAN_DISABLE_JIT", "0").lower() in ("1", "true", "yes")
JIT_ENABLED = numba is not None and not JIT_DISABLED


def jit(fn):
    """Compile ``fn`` with ``numba.njit`` when enabled.

    The plain function stays reachable as ``.py_func`` either way.
    """
    if not JIT_ENABLED:
        fn.py_func = fn
        return fn
    return numba.njit(cache=True, fastmath=False)(fn)
