"""Backend selection for the numeric kernels.

Numba is used when it imports cleanly and ``ROLLE_DISABLE_NUMBA`` is not set
to a truthy value; otherwise every kernel runs on its vectorized numpy path.
"""
import os

_TRUTHY = {"1", "true", "yes", "on"}

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

NUMBA_DISABLED = os.environ.get("ROLLE_DISABLE_NUMBA", "").strip().lower() in _TRUTHY
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
