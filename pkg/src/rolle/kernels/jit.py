"""Numba implementations of the hot loops.

Every function here has a vectorized counterpart in :mod:`rolle.kernels.vec`
with the same signature and semantics.
"""
import numpy as np
from numba import njit

from ._common import (
    GAP_EXPONENTIAL,
    GOLDEN,
    HALTON_SALT,
    LOW_DISCREPANCY,
    MAX_ATTEMPTS,
    MAX_STREAMS,
    MAXIT,
    MIN_GAP,
    MIX1,
    MIX2,
    PRIMES,
    STREAM_SALT,
)

_GOLDEN = np.uint64(GOLDEN)
_MIX1 = np.uint64(MIX1)
_MIX2 = np.uint64(MIX2)
_STREAM_SALT = np.uint64(STREAM_SALT)
_HALTON_SALT = np.uint64(HALTON_SALT)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0


# ---------------------------------------------------------------- counter RNG


@njit(cache=True)
def splitmix64(z):
    z = z + _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True)
def sample_key(key, index):
    return splitmix64(key ^ splitmix64(np.uint64(index)))


@njit(cache=True)
def lane_uniform(h, lane):
    """Uniform in (0, 1) for lane ``lane`` of the stream keyed by ``h``."""
    z = splitmix64(h + np.uint64(lane) * _GOLDEN)
    return (np.float64(z >> _S11) + 0.5) * _INV53


@njit(cache=True)
def _radical_inverse(i, base):
    inv = 1.0 / base
    f = inv
    r = 0.0
    while i > 0:
        r += f * (i % base)
        i //= base
        f *= inv
    return r


@njit(cache=True)
def _draw(scheme, n, half_width, key, index, h, attempt, tmp):
    base = attempt * n
    if scheme == GAP_EXPONENTIAL and n > 1:
        tmp[0] = 0.0
        for j in range(1, n):
            u = lane_uniform(h, base + j - 1)
            tmp[j] = tmp[j - 1] - np.log(u)
        mean = 0.0
        for j in range(n):
            mean += tmp[j]
        mean /= n
        amp = 0.0
        for j in range(n):
            tmp[j] -= mean
            if abs(tmp[j]) > amp:
                amp = abs(tmp[j])
        for j in range(n):
            tmp[j] *= half_width / amp
        return
    if scheme == LOW_DISCREPANCY:
        hs = splitmix64(key ^ _HALTON_SALT)
        for j in range(n):
            x = _radical_inverse(index + 1, PRIMES[j]) + lane_uniform(hs, j)
            if attempt > 0:
                x += lane_uniform(h, base + j)
            x -= np.floor(x)
            tmp[j] = half_width * (2.0 * x - 1.0)
    else:
        for j in range(n):
            tmp[j] = half_width * (2.0 * lane_uniform(h, base + j) - 1.0)
    tmp.sort()


@njit(cache=True)
def _min_gap_ok(tmp, n):
    for j in range(n - 1):
        if not tmp[j + 1] - tmp[j] > MIN_GAP:
            return False
    return True


@njit(cache=True)
def sample_batch(scheme, n, half_width, seed, start, count):
    """Root lists for indices ``start .. start + count - 1``; shape (count, n)."""
    key = splitmix64(np.uint64(seed))
    out = np.empty((count, n))
    tmp = np.empty(n)
    for r in range(count):
        index = start + r
        h = sample_key(key, index)
        done = False
        for _stream in range(MAX_STREAMS):
            for attempt in range(MAX_ATTEMPTS):
                _draw(scheme, n, half_width, key, index, h, attempt, tmp)
                if _min_gap_ok(tmp, n):
                    done = True
                    break
            if done:
                break
            h = splitmix64(h ^ _STREAM_SALT)
        if not done:
            raise RuntimeError("sampler exhausted its retry budget")
        for j in range(n):
            out[r, j] = tmp[j]
    return out


# ----------------------------------------------------------- root isolation


@njit(cache=True)
def _interlaced_root(row, m, lo, hi, tol_rel):
    # zero of sum_j 1/(x - row[j]) on (lo, hi); strictly decreasing there
    x = 0.5 * (lo + hi)
    for _ in range(MAXIT):
        s = 0.0
        ds = 0.0
        for j in range(m):
            inv = 1.0 / (x - row[j])
            s += inv
            ds += inv * inv
        if s == 0.0:
            return x
        if s > 0.0:
            lo = x
        else:
            hi = x
        tol = tol_rel * (1.0 + abs(x))
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        step = s / ds
        if abs(step) < 0.5 * tol:
            # step past the root so the next sign test closes the bracket
            step += 0.5 * tol if step > 0.0 else -0.5 * tol
        xn = x + step
        if xn <= lo or xn >= hi:
            xn = 0.5 * (lo + hi)
        x = xn
    return 0.5 * (lo + hi)


@njit(cache=True)
def arrangement_into(roots, out, tol_rel):
    n = roots.shape[0]
    for j in range(n):
        out[j] = roots[j]
    off = 0
    for i in range(n - 1):
        m = n - i
        nxt = off + m
        for l in range(m - 1):
            out[nxt + l] = _interlaced_root(
                out[off:off + m], m, out[off + l], out[off + l + 1], tol_rel
            )
        off = nxt


@njit(cache=True)
def arrangement_batch(roots, tol_rel):
    """Flattened arrangements, row-major by derivative order; shape (m, n(n+1)/2)."""
    count, n = roots.shape
    out = np.empty((count, n * (n + 1) // 2))
    for r in range(count):
        arrangement_into(roots[r], out[r], tol_rel)
    return out


@njit(cache=True)
def words_batch(values, labels, sep_tol):
    """ASCII-digit words of sorted arrangements and a strictness mask."""
    count, size = values.shape
    words = np.empty((count, size), dtype=np.uint8)
    strict = np.ones(count, dtype=np.bool_)
    for r in range(count):
        order = np.argsort(values[r], kind="mergesort")
        prev = values[r, order[0]]
        words[r, 0] = 48 + labels[order[0]]
        for j in range(1, size):
            cur = values[r, order[j]]
            words[r, j] = 48 + labels[order[j]]
            scale = 1.0 + max(abs(prev), abs(cur))
            if cur - prev < sep_tol * scale:
                strict[r] = False
            prev = cur
    return words, strict


# --------------------------------------------------------------- enumeration


@njit(cache=True)
def enumerate_rolle(n, total):
    """All admissible words of degree n in lexicographic order, as ASCII rows."""
    size = n * (n + 1) // 2
    out = np.empty((total, size), dtype=np.uint8)
    word = np.zeros(size, dtype=np.int64)
    used = np.zeros(n + 1, dtype=np.int64)
    between = np.zeros(n + 1, dtype=np.int64)
    count = 0
    pos = 0
    nxt = 0
    while True:
        if pos == size:
            if count < total:
                for j in range(size):
                    out[count, j] = 48 + word[j]
            count += 1
            pos -= 1
            s = word[pos]
            used[s] -= 1
            if s > 0:
                between[s - 1] -= 1
            between[s] = 1 if used[s] > 0 else 0
            nxt = s + 1
            continue
        placed = -1
        for s in range(nxt, n):
            if used[s] >= n - s:
                continue
            if s > 0:
                if used[s - 1] == 0 or used[s - 1] == n - s + 1 or between[s - 1] != 0:
                    continue
            if s < n - 1 and used[s] > 0 and between[s] != 1:
                continue
            placed = s
            break
        if placed >= 0:
            s = placed
            word[pos] = s
            used[s] += 1
            if s > 0:
                between[s - 1] += 1
            between[s] = 0
            pos += 1
            nxt = 0
        else:
            if pos == 0:
                break
            pos -= 1
            s = word[pos]
            used[s] -= 1
            if s > 0:
                between[s - 1] -= 1
            between[s] = 1 if used[s] > 0 else 0
            nxt = s + 1
    return out, count


# ---------------------------------------------------------- quartic audit

_Z = np.sqrt(1.0 / 6.0)


@njit(cache=True)
def _quartic(x, u, v):
    x2 = x * x
    return x2 * x2 - x2 + u * x + v


@njit(cache=True)
def _quartic_d(x, u):
    return 4.0 * x * x * x - 2.0 * x + u


@njit(cache=True)
def _bisect(which, u, v, lo, hi):
    # monotone bisection of p (which=0) or p' (which=1) on [lo, hi]
    flo = _quartic(lo, u, v) if which == 0 else _quartic_d(lo, u)
    for _ in range(MAXIT):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _quartic(mid, u, v) if which == 0 else _quartic_d(mid, u)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo = mid
            flo = fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@njit(cache=True)
def anderson_one(u, v, out):
    """Fill ``out`` with (x1..x4, y1..y3) and return status bits.

    Bit 0: four distinct real zeros; bit 1: hypotheses x2 < z1 and x3 < z2;
    bit 2: conclusion y2 < 0.
    """
    for j in range(7):
        out[j] = np.nan
    if not (_quartic_d(-_Z, u) > 0.0 and _quartic_d(_Z, u) < 0.0):
        return 0
    bd = 1.0 + max(0.5, abs(u) / 4.0)
    y1 = _bisect(1, u, v, -bd, -_Z)
    y2 = _bisect(1, u, v, -_Z, _Z)
    y3 = _bisect(1, u, v, _Z, bd)
    out[4] = y1
    out[5] = y2
    out[6] = y3
    if not (_quartic(y1, u, v) < 0.0 and _quartic(y2, u, v) > 0.0 and _quartic(y3, u, v) < 0.0):
        return 0
    bp = 1.0 + max(1.0, max(abs(u), abs(v)))
    out[0] = _bisect(0, u, v, -bp, y1)
    out[1] = _bisect(0, u, v, y1, y2)
    out[2] = _bisect(0, u, v, y2, y3)
    out[3] = _bisect(0, u, v, y3, bp)
    status = 1
    if out[1] < -_Z and out[2] < _Z:
        status |= 2
    if y2 < 0.0:
        status |= 4
    return status


@njit(cache=True)
def anderson_batch(u, v):
    count = u.shape[0]
    status = np.empty(count, dtype=np.int64)
    buf = np.empty(7)
    for r in range(count):
        status[r] = anderson_one(u[r], v[r], buf)
    return status
