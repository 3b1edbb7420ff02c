"""Real-rooted polynomials, their derivative zero arrangements and symbolic sequences.

Roots are the primary data. Coefficients are derived on demand and only
used where an explicit coefficient form is requested.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import InterlacingViolated, InvalidInput, NotStrictlyNice
from .kernels import REFINE_TOL, SEP_TOL
from .words import SymbolicSequence

__all__ = [
    "Arrangement",
    "CoefficientPoly",
    "RolleViolation",
    "RootList",
    "arrangement",
    "check_standard_rolle",
    "coefficients_from_roots",
    "differentiate",
    "isolate_roots_interlaced",
    "symbolic_sequence",
]

MAXIT = 200


@dataclass(frozen=True)
class RootList:
    """Strictly increasing, finite real zeros of a monic real-rooted polynomial."""

    roots: tuple

    def __post_init__(self):
        roots = tuple(float(x) for x in np.ravel(self.roots))
        if not roots:
            raise InvalidInput("a root list needs at least one root")
        if not all(math.isfinite(x) for x in roots):
            raise InvalidInput("roots must be finite")
        scale = 1.0 + max(abs(x) for x in roots)
        for a, b in zip(roots, roots[1:]):
            if not b - a > 4.0 * REFINE_TOL * scale:
                raise InvalidInput(f"roots must be strictly increasing and separated (got {a!r}, {b!r})")
        object.__setattr__(self, "roots", roots)

    @property
    def n(self):
        return len(self.roots)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def as_array(self):
        return np.array(self.roots)


@dataclass(frozen=True)
class CoefficientPoly:
    """Polynomial with coefficients in ascending order of degree."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in np.ravel(self.coeffs))
        if not c or c[-1] == 0.0:
            raise InvalidInput("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        acc = np.full(x.shape, self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)


def coefficients_from_roots(r):
    """Expand the monic product over ``r`` one factor at a time."""
    if not isinstance(r, RootList):
        r = RootList(r)
    c = np.array([1.0])
    for root in r:
        nxt = np.zeros(c.size + 1)
        nxt[1:] += c
        nxt[:-1] -= root * c
        c = nxt
    return CoefficientPoly(c)


def differentiate(p):
    if p.degree < 1:
        raise InvalidInput("constant has no derivative row")
    c = np.asarray(p.coeffs)
    return CoefficientPoly(c[1:] * np.arange(1, c.size))


def _horner2(coeffs, x):
    # value, derivative and a running-error bound for the value
    p = coeffs[-1]
    dp = 0.0
    mag = abs(coeffs[-1])
    ax = abs(x)
    for c in reversed(coeffs[:-1]):
        dp = dp * x + p
        p = p * x + c
        mag = mag * ax + abs(c)
    return p, dp, mag


def _refine(coeffs, lo, hi, slo):
    """Safeguarded Newton inside a sign-change bracket; slo is the sign at lo."""
    eps = np.finfo(float).eps
    x = 0.5 * (lo + hi)
    for _ in range(MAXIT):
        fx, dfx, mag = _horner2(coeffs, x)
        if abs(fx) <= 4.0 * eps * mag:
            return x
        if (fx > 0.0) == (slo > 0.0):
            lo = x
        else:
            hi = x
        tol = REFINE_TOL * (1.0 + abs(x))
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        step = -fx / dfx if dfx != 0.0 else 0.0
        if 0.0 < abs(step) < 0.5 * tol:
            step += math.copysign(0.5 * tol, step)
        xn = x + step
        if step == 0.0 or not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        x = xn
    return 0.5 * (lo + hi)


def isolate_roots_interlaced(p, bracket):
    """Zeros of ``p``, one in each gap of ``bracket``.

    ``p`` must be the derivative of the monic polynomial with roots
    ``bracket``, so its zeros strictly interlace them.
    """
    if not isinstance(bracket, RootList):
        bracket = RootList(bracket)
    if p.degree != bracket.n - 1:
        raise InvalidInput(f"degree {p.degree} does not match {bracket.n} bracketing roots")
    coeffs = p.coeffs
    found = []
    for lo, hi in zip(bracket.roots, bracket.roots[1:]):
        flo, fhi = p(lo), p(hi)
        if not flo * fhi < 0.0:
            raise InterlacingViolated()
        found.append(_refine(coeffs, lo, hi, flo))
    return RootList(found)


@dataclass(frozen=True)
class Arrangement:
    """Zeros ``rows[i][l]`` of the i-th derivative, i = 0..n-1."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(float(x) for x in row) for row in self.rows)
        n = len(rows)
        if n < 1:
            raise InvalidInput("an arrangement needs at least one row")
        for i, row in enumerate(rows):
            if len(row) != n - i:
                raise InvalidInput(f"row {i} must have {n - i} entries, got {len(row)}")
            if any(not b > a for a, b in zip(row, row[1:])):
                raise InvalidInput(f"row {i} is not strictly increasing")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self):
        return len(self.rows)

    def flat(self):
        return np.array([x for row in self.rows for x in row])

    @classmethod
    def from_flat(cls, values, n):
        off = kernels.row_offsets(n)
        return cls(tuple(tuple(values[off[i]:off[i + 1]]) for i in range(n)))


def arrangement(r):
    if not isinstance(r, RootList):
        r = RootList(r)
    flat = kernels.arrangement_batch(r.as_array()[None, :])[0]
    a = Arrangement.from_flat(flat, r.n)
    if check_standard_rolle(a):
        # refinement stays inside open brackets, so this only fires on broken input
        raise InterlacingViolated()
    return a


def symbolic_sequence(a, sep_tol=SEP_TOL):
    values = a.flat()
    labels = kernels.row_labels(a.n)
    order = np.argsort(values, kind="mergesort")
    srt = values[order]
    gaps = np.diff(srt)
    scale = 1.0 + np.maximum(np.abs(srt[1:]), np.abs(srt[:-1]))
    if np.any(gaps < sep_tol * scale):
        raise NotStrictlyNice()
    return SymbolicSequence(tuple(int(s) for s in labels[order]))


class RolleViolation(NamedTuple):
    """Failed inequality x_l^(i) < x_l^(j) < x_{l+j-i}^(i); l is 1-based."""

    i: int
    j: int
    l: int


def check_standard_rolle(a):
    rows = a.rows
    n = a.n
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(1, n - j + 1):
                left = rows[i][l - 1]
                mid = rows[j][l - 1]
                right = rows[i][l + j - i - 1]
                if not left < mid < right:
                    bad.append(RolleViolation(i, j, l))
    return bad
