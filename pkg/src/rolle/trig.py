"""Trigonometric polynomials, their zeros on the circle and circular arrangement words."""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    GridTooCoarseWarning,
    InternalConsistencyError,
    InvalidInput,
    NotStrictlyNice,
    ZeroCountMismatch,
)
from .kernels import SEP_TOL
from .words import CircularSequence

__all__ = [
    "CircleRootList",
    "TrigPoly",
    "differentiate_trig",
    "eval_trig",
    "periodic_arrangement",
    "real_rooted_trig_from_zeros",
    "roots_on_circle",
    "sample_zero_set",
]

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-12
DEFAULT_GRID = 4096


@dataclass(frozen=True)
class TrigPoly:
    """a0 + sum_k a[k-1] cos kx + b[k-1] sin kx, k = 1..n."""

    a0: float
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(float(x) for x in np.ravel(self.a))
        b = tuple(float(x) for x in np.ravel(self.b))
        if len(a) != len(b) or not a:
            raise InvalidInput("a and b must be nonempty and of equal length")
        if a[-1] == 0.0 and b[-1] == 0.0:
            raise InvalidInput("leading pair (a_n, b_n) must not vanish")
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self):
        return len(self.a)

    def __call__(self, x):
        return eval_trig(self, x)


@dataclass(frozen=True)
class CircleRootList:
    angles: tuple

    def __post_init__(self):
        ang = tuple(float(x) for x in self.angles)
        if any(not 0.0 <= x < TWO_PI for x in ang):
            raise InvalidInput("angles must lie in [0, 2*pi)")
        if any(not b > a for a, b in zip(ang, ang[1:])):
            raise InvalidInput("angles must be strictly increasing")
        object.__setattr__(self, "angles", ang)

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def min_gap(self):
        """Smallest arc between cyclically consecutive angles."""
        return _cyclic_min_gap(np.asarray(self.angles))


def _cyclic_min_gap(a):
    if a.size < 2:
        return TWO_PI
    return float(min(np.diff(a).min(), a[0] + TWO_PI - a[-1]))


def eval_trig(p, x):
    x = np.asarray(x, dtype=np.float64)
    kx = np.multiply.outer(x, np.arange(1, p.n + 1))
    out = p.a0 + np.cos(kx) @ np.asarray(p.a) + np.sin(kx) @ np.asarray(p.b)
    return out if out.ndim else float(out)


def differentiate_trig(p):
    k = np.arange(1, p.n + 1)
    a, b = np.asarray(p.a), np.asarray(p.b)
    return TrigPoly(0.0, k * b, -k * a)


def _refine_all(p, lo, hi, flo):
    """Bracketed Newton on every sign change at once; bisects whenever a step leaves its bracket."""
    dp = differentiate_trig(p)
    pos = flo > 0.0
    x = 0.5 * (lo + hi)
    live = np.ones(x.shape, dtype=bool)
    for _ in range(100):
        fx = eval_trig(p, x)
        left = (fx > 0.0) == pos
        lo = np.where(left, x, lo)
        hi = np.where(left, hi, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = fx / eval_trig(dp, x)
        live &= ~((np.abs(step) <= ANGLE_TOL) | (fx == 0.0) | (hi - lo <= ANGLE_TOL))
        if not live.any():
            break
        xn = x - step
        xn = np.where((xn > lo) & (xn < hi), xn, 0.5 * (lo + hi))
        x = np.where(live, xn, x)
    return x


def roots_on_circle(p, grid=DEFAULT_GRID):
    """Simple zeros of ``p`` on [0, 2*pi): sign scan, then refinement inside each bracket.

    Zeros of even multiplicity produce no sign change and are missed.
    """
    if grid < 8 * p.n:
        raise InvalidInput(f"grid must be at least 8n = {8 * p.n}")
    xs = TWO_PI * np.arange(grid) / grid
    fs = eval_trig(p, xs)
    # periodicity closes the last interval with the value at 0
    nxt = np.roll(fs, -1)
    ends = np.append(xs[1:], TWO_PI)
    found = list(xs[fs == 0.0])
    idx = np.flatnonzero(fs * nxt < 0.0)
    if idx.size:
        found.extend(_refine_all(p, xs[idx], ends[idx], fs[idx]) % TWO_PI)
    found = sorted(float(x) for x in found)
    if len(found) > 2 * p.n:
        raise InternalConsistencyError(f"found {len(found)} zeros, degree {p.n} allows at most {2 * p.n}")
    roots = CircleRootList(found)
    if len(found) > 1 and roots.min_gap() < 4.0 * TWO_PI / grid:
        warnings.warn("grid too coarse: detected zeros are closer than 4 grid steps", GridTooCoarseWarning, stacklevel=2)
    return roots


def real_rooted_trig_from_zeros(zeros):
    """Degree-n polynomial proportional to prod_j sin((x - r_j)/2) over 2n zeros.

    Coefficients come from an FFT of 4n+1 uniform samples, which is exact for
    degree n; the result is scaled to unit leading amplitude.
    """
    r = np.sort(np.asarray(zeros, dtype=np.float64).ravel())
    if r.size < 2 or r.size % 2:
        raise InvalidInput("need an even, positive number of zeros")
    if np.any(r < 0.0) or np.any(r >= TWO_PI):
        raise InvalidInput("zeros must lie in [0, 2*pi)")
    if _cyclic_min_gap(r) <= ANGLE_TOL:
        raise InvalidInput("zeros must be distinct")
    n = r.size // 2
    m = 4 * n + 1
    xs = TWO_PI * np.arange(m) / m
    g = np.prod(np.sin(0.5 * (xs[:, None] - r[None, :])), axis=1)
    c = np.fft.rfft(g) / m
    a = 2.0 * c[1:n + 1].real
    b = -2.0 * c[1:n + 1].imag
    scale = math.hypot(a[-1], b[-1])
    return TrigPoly(c[0].real / scale, a / scale, b / scale)


def periodic_arrangement(p, k, grid=DEFAULT_GRID):
    """Circular word of the zeros of p, p', ..., p^(k-1), labelled by order."""
    if k < 1:
        raise InvalidInput("depth k must be at least 1")
    copies = 2 * p.n
    angles, labels = [], []
    q = p
    for d in range(k):
        if d:
            q = differentiate_trig(q)
        roots = roots_on_circle(q, grid)
        if len(roots) != copies:
            raise ZeroCountMismatch(f"zero count mismatch: derivative {d} has {len(roots)} zeros, expected {copies}")
        angles.extend(roots.angles)
        labels.extend([d] * copies)
    angles = np.asarray(angles)
    order = np.argsort(angles, kind="mergesort")
    srt = angles[order]
    gaps = np.append(np.diff(srt), srt[0] + TWO_PI - srt[-1])
    if np.any(gaps < SEP_TOL * (1.0 + TWO_PI)):
        raise NotStrictlyNice("not strictly nice on circle")
    word = tuple(labels[j] for j in order)
    try:
        return CircularSequence(copies, k, word)
    except InvalidInput as exc:
        raise InternalConsistencyError(f"circular word breaks the cyclic one-between rule: {exc}") from exc


def sample_zero_set(n, seed, index, min_gap=0.05, max_attempts=1024):
    """2n sorted angles with cyclic gaps >= min_gap; a function of (seed, index) only."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if 2 * n * min_gap >= TWO_PI:
        raise InvalidInput("min_gap too large for 2n zeros")
    vec = kernels.vec
    h = vec.sample_key(vec.splitmix64(np.uint64(seed)), np.uint64(index))
    lanes = np.arange(2 * n, dtype=np.uint64)
    for attempt in range(max_attempts):
        u = vec.lane_uniform(h, lanes + np.uint64(attempt * 2 * n))
        r = np.sort(TWO_PI * u)
        if _cyclic_min_gap(r) >= min_gap and r[-1] < TWO_PI:
            return r
    raise InternalConsistencyError("zero-set sampler exhausted its retry budget")
