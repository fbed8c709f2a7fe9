"""Backend switch for the sweep kernels.

Set ``LOGK3_DISABLE_NUMBA=1`` to force the vectorized numpy path.
"""

from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def numba_disabled() -> bool:
    return os.environ.get("LOGK3_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


def backend() -> str:
    """``"numba"`` or ``"numpy"``, read from the environment on every call."""
    return "numba" if HAVE_NUMBA and not numba_disabled() else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
