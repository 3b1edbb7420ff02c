"""Constants shared by the numba and numpy kernel implementations."""
import numpy as np

# relative interval width at which a bracketed root counts as refined
REFINE_TOL = 1e-13
MAXIT = 200

# default relative separation below which two zeros are considered equal
SEP_TOL = 1e-9

MIN_GAP = 1e-6
MAX_ATTEMPTS = 64
MAX_STREAMS = 16

SCHEMES = ("uniform-box", "gap-exponential", "low-discrepancy")
UNIFORM_BOX, GAP_EXPONENTIAL, LOW_DISCREPANCY = 0, 1, 2

PRIMES = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37], dtype=np.int64)

# splitmix64 constants
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
STREAM_SALT = 0xD1B54A32D192ED03
HALTON_SALT = 0x8CB92BA72F3D8DD7


def row_offsets(n):
    """Start of each derivative row in a flattened arrangement."""
    off = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        off[i + 1] = off[i] + (n - i)
    return off


def row_labels(n):
    """Derivative order of each slot of a flattened arrangement."""
    return np.repeat(np.arange(n, dtype=np.uint8), np.arange(n, 0, -1))
