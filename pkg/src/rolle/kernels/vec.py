"""Vectorized numpy implementations mirroring :mod:`rolle.kernels.jit`.

Loops run over derivative rows and bracket positions; every inner
operation is vectorized across the batch dimension.
"""
import numpy as np

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

_U = np.uint64
_INV53 = 1.0 / 9007199254740992.0


def splitmix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = z + _U(GOLDEN)
        z = (z ^ (z >> _U(30))) * _U(MIX1)
        z = (z ^ (z >> _U(27))) * _U(MIX2)
    return z ^ (z >> _U(31))


def sample_key(key, index):
    return splitmix64(_U(key) ^ splitmix64(np.asarray(index, dtype=np.uint64)))


def lane_uniform(h, lane):
    h = np.asarray(h, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = splitmix64(h + np.asarray(lane, dtype=np.uint64) * _U(GOLDEN))
    return ((z >> _U(11)).astype(np.float64) + 0.5) * _INV53


def _radical_inverse(i, base):
    i = np.array(i, dtype=np.int64)
    inv = 1.0 / base
    f = inv
    r = np.zeros(i.shape)
    while np.any(i > 0):
        r += f * (i % base)
        i //= base
        f *= inv
    return r


def _draw(scheme, n, half_width, key, index, h, attempt):
    m = index.shape[0]
    base = attempt * n
    lanes = base + np.arange(n, dtype=np.uint64)
    if scheme == GAP_EXPONENTIAL and n > 1:
        u = lane_uniform(h[:, None], lanes[None, : n - 1])
        tmp = np.zeros((m, n))
        tmp[:, 1:] = np.cumsum(-np.log(u), axis=1)
        mean = np.zeros(m)
        for j in range(n):
            mean += tmp[:, j]
        tmp -= (mean / n)[:, None]
        amp = np.abs(tmp).max(axis=1)
        return tmp * (half_width / amp)[:, None]
    if scheme == LOW_DISCREPANCY:
        hs = splitmix64(_U(key) ^ _U(HALTON_SALT))
        x = np.empty((m, n))
        for j in range(n):
            x[:, j] = _radical_inverse(index + 1, int(PRIMES[j])) + lane_uniform(hs, j)
        if attempt > 0:
            x += lane_uniform(h[:, None], lanes[None, :])
        x -= np.floor(x)
        tmp = half_width * (2.0 * x - 1.0)
    else:
        tmp = half_width * (2.0 * lane_uniform(h[:, None], lanes[None, :]) - 1.0)
    return np.sort(tmp, axis=1)


def sample_batch(scheme, n, half_width, seed, start, count):
    key = splitmix64(_U(seed))
    index = np.arange(start, start + count, dtype=np.int64)
    h = sample_key(key, index)
    out = np.empty((count, n))
    pending = np.arange(count)
    for _stream in range(MAX_STREAMS):
        for attempt in range(MAX_ATTEMPTS):
            if pending.size == 0:
                return out
            tmp = _draw(scheme, n, half_width, key, index[pending], h[pending], attempt)
            ok = np.all(np.diff(tmp, axis=1) > MIN_GAP, axis=1)
            out[pending[ok]] = tmp[ok]
            pending = pending[~ok]
        h[pending] = splitmix64(h[pending] ^ _U(STREAM_SALT))
    if pending.size:
        raise RuntimeError("sampler exhausted its retry budget")
    return out


def _interlaced_roots(row, lo, hi, tol_rel):
    """Vectorized counterpart of ``jit._interlaced_root``; row has shape (count, m)."""
    lo = lo.copy()
    hi = hi.copy()
    x = 0.5 * (lo + hi)
    result = np.empty_like(x)
    active = np.ones(x.shape, dtype=bool)
    for _ in range(MAXIT):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        xa = x[idx]
        inv = 1.0 / (xa[:, None] - row[idx])
        s = inv.sum(axis=1)
        ds = (inv * inv).sum(axis=1)
        zero = s == 0.0
        result[idx[zero]] = xa[zero]
        pos = s > 0.0
        lo_a = np.where(pos, xa, lo[idx])
        hi_a = np.where(pos | zero, hi[idx], xa)
        lo[idx] = lo_a
        hi[idx] = hi_a
        tol = tol_rel * (1.0 + np.abs(xa))
        closed = (hi_a - lo_a <= tol) & ~zero
        result[idx[closed]] = 0.5 * (lo_a[closed] + hi_a[closed])
        with np.errstate(invalid="ignore", divide="ignore"):
            step = s / ds
        small = np.abs(step) < 0.5 * tol
        step = np.where(small, step + np.where(step > 0.0, 0.5 * tol, -0.5 * tol), step)
        xn = xa + step
        bad = (xn <= lo_a) | (xn >= hi_a)
        xn = np.where(bad, 0.5 * (lo_a + hi_a), xn)
        x[idx] = xn
        active[idx[zero | closed]] = False
    left = np.nonzero(active)[0]
    result[left] = 0.5 * (lo[left] + hi[left])
    return result


def arrangement_batch(roots, tol_rel):
    roots = np.asarray(roots, dtype=np.float64)
    count, n = roots.shape
    out = np.empty((count, n * (n + 1) // 2))
    out[:, :n] = roots
    off = 0
    for i in range(n - 1):
        m = n - i
        nxt = off + m
        row = out[:, off:off + m]
        for l in range(m - 1):
            out[:, nxt + l] = _interlaced_roots(row, row[:, l], row[:, l + 1], tol_rel)
        off = nxt
    return out


def words_batch(values, labels, sep_tol):
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, axis=1, kind="mergesort")
    srt = np.take_along_axis(values, order, axis=1)
    words = (48 + np.asarray(labels, dtype=np.uint8)[order]).astype(np.uint8)
    scale = 1.0 + np.maximum(np.abs(srt[:, 1:]), np.abs(srt[:, :-1]))
    strict = np.all(np.diff(srt, axis=1) >= sep_tol * scale, axis=1)
    return words, strict


def enumerate_rolle(n, total):
    """Recursive backtracking; same output layout as ``jit.enumerate_rolle``."""
    size = n * (n + 1) // 2
    out = np.empty((total, size), dtype=np.uint8)
    word = [0] * size
    used = [0] * (n + 1)
    between = [0] * (n + 1)
    count = 0

    def place(pos):
        nonlocal count
        if pos == size:
            if count < total:
                out[count] = [48 + s for s in word]
            count += 1
            return
        for s in range(n):
            if used[s] >= n - s:
                continue
            if s > 0 and (used[s - 1] == 0 or used[s - 1] == n - s + 1 or between[s - 1] != 0):
                continue
            if s < n - 1 and used[s] > 0 and between[s] != 1:
                continue
            saved = between[s]
            word[pos] = s
            used[s] += 1
            if s > 0:
                between[s - 1] += 1
            between[s] = 0
            place(pos + 1)
            used[s] -= 1
            if s > 0:
                between[s - 1] -= 1
            between[s] = saved

    place(0)
    return out, count


_Z = np.sqrt(1.0 / 6.0)


def _quartic(x, u, v):
    x2 = x * x
    return x2 * x2 - x2 + u * x + v


def _quartic_d(x, u):
    return 4.0 * x * x * x - 2.0 * x + u


def _bisect(f, lo, hi):
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    flo = f(lo)
    for _ in range(MAXIT):
        mid = 0.5 * (lo + hi)
        live = (mid > lo) & (mid < hi)
        if not live.any():
            break
        fm = f(mid)
        exact = fm == 0.0
        same = (fm > 0.0) == (flo > 0.0)
        go_lo = live & same & ~exact
        go_hi = live & ~same & ~exact
        lo = np.where(go_lo, mid, lo)
        flo = np.where(go_lo, fm, flo)
        hi = np.where(go_hi, mid, hi)
        lo = np.where(live & exact, mid, lo)
        hi = np.where(live & exact, mid, hi)
    return 0.5 * (lo + hi)


def anderson_batch(u, v):
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    status = np.zeros(u.shape, dtype=np.int64)
    three = (_quartic_d(-_Z, u) > 0.0) & (_quartic_d(_Z, u) < 0.0)
    bd = 1.0 + np.maximum(0.5, np.abs(u) / 4.0)
    dp = lambda x: _quartic_d(x, u)  # noqa: E731
    y1 = _bisect(dp, -bd, np.full(u.shape, -_Z))
    y2 = _bisect(dp, np.full(u.shape, -_Z), np.full(u.shape, _Z))
    y3 = _bisect(dp, np.full(u.shape, _Z), bd)
    real = three & (_quartic(y1, u, v) < 0.0) & (_quartic(y2, u, v) > 0.0) & (_quartic(y3, u, v) < 0.0)
    p = lambda x: _quartic(x, u, v)  # noqa: E731
    x2 = _bisect(p, y1, y2)
    x3 = _bisect(p, y2, y3)
    hyp = (x2 < -_Z) & (x3 < _Z)
    status[real] |= 1
    status[real & hyp] |= 2
    status[real & (y2 < 0.0)] |= 4
    return status
