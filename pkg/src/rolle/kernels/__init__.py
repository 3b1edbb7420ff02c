"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import time (see :mod:`rolle._accel`). Both
implementations stay importable so they can be compared directly.
"""
import numpy as np

from .. import _accel
from . import vec
from ._common import (
    GAP_EXPONENTIAL,
    LOW_DISCREPANCY,
    MIN_GAP,
    REFINE_TOL,
    SCHEMES,
    SEP_TOL,
    UNIFORM_BOX,
    row_labels,
    row_offsets,
)

if _accel.USE_NUMBA:
    from . import jit as _impl
else:
    _impl = vec

BACKEND = _accel.backend_name()


def sample_batch(scheme, n, half_width, seed, start, count):
    return _impl.sample_batch(int(scheme), int(n), float(half_width), int(seed) & (2**64 - 1),
                              int(start), int(count))


def arrangement_batch(roots, tol_rel=REFINE_TOL):
    return _impl.arrangement_batch(np.ascontiguousarray(roots, dtype=np.float64), float(tol_rel))


def words_batch(values, labels, sep_tol=SEP_TOL):
    return _impl.words_batch(np.ascontiguousarray(values, dtype=np.float64),
                             np.ascontiguousarray(labels, dtype=np.uint8), float(sep_tol))


def enumerate_rolle(n, total):
    return _impl.enumerate_rolle(int(n), int(total))


def anderson_batch(u, v):
    return _impl.anderson_batch(np.ascontiguousarray(u, dtype=np.float64),
                                np.ascontiguousarray(v, dtype=np.float64))


__all__ = [
    "BACKEND", "GAP_EXPONENTIAL", "LOW_DISCREPANCY", "MIN_GAP", "REFINE_TOL", "SCHEMES",
    "SEP_TOL", "UNIFORM_BOX", "anderson_batch", "arrangement_batch", "enumerate_rolle",
    "row_labels", "row_offsets", "sample_batch", "words_batch",
]
