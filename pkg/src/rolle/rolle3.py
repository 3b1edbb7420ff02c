"""Zero arrangements of 3-nice functions: the inequality check and its converse.

A 6-tuple (x1, x2, x3, y1, y2, z1) lists the zeros of f, f' and f''. The
checker tests the admissibility system; :func:`construct_3nice` builds a
convex C^1 piecewise-quadratic D = f' whose antiderivative from x1 has
exactly that arrangement.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import BalancingFailed, InadmissibleTuple, InvalidInput, RolleError

__all__ = [
    "CaseReport",
    "ConvexDerivativeSpline",
    "Tuple3Arrangement",
    "Violation",
    "check_case_inequalities",
    "check_inequalities",
    "construct_3nice",
    "evaluate",
    "inequality_terms",
    "recovered_arrangement",
]

STRICT_TOL = 1e-12
FILLET_FRACTION = 1e-2
MAX_HALVINGS = 8


@dataclass(frozen=True)
class Tuple3Arrangement:
    x1: float
    x2: float
    x3: float
    y1: float
    y2: float
    z1: float

    def __post_init__(self):
        for name in ("x1", "x2", "x3", "y1", "y2", "z1"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise InvalidInput(f"{name} must be finite")
            object.__setattr__(self, name, val)

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.y1, self.y2, self.z1)

    def reflect(self):
        """Image under x -> -x, with each group re-sorted."""
        return Tuple3Arrangement(-self.x3, -self.x2, -self.x1, -self.y2, -self.y1, -self.z1)

    @property
    def scale(self):
        return max(1.0, max(abs(v) for v in self.as_tuple()))

    @property
    def span(self):
        return self.x3 - self.x1


class Violation(NamedTuple):
    line: str
    lhs: float
    rhs: float

    def __str__(self):
        return f"{self.line} violated ({self.lhs:.6g} !< {self.rhs:.6g})"


def _sqrt(x):
    return math.sqrt(x) if x >= 0.0 else math.nan


def _lt(lhs, rhs, tol):
    # strict, with near-equality treated as failure; nan fails
    return lhs < rhs - tol


def _ordering(t, tol):
    out = []
    chain = (t.x1, t.y1, t.x2, t.y2, t.x3)
    worst = min(b - a for a, b in zip(chain, chain[1:]))
    if not worst > tol:
        out.append(Violation("line 1", 0.0, worst))
    worst = min(t.z1 - t.y1, t.y2 - t.z1)
    if not worst > tol:
        out.append(Violation("line 2", 0.0, worst))
    return out


def inequality_terms(t):
    """Both sides of lines 3 and 4 as ``{line: (lhs, rhs)}``; rhs is nan when undefined."""
    gap = abs(t.z1 - t.x2)
    lhs3 = t.y1 - t.x1
    rhs3 = min(t.x2 - t.y1, _sqrt((t.z1 - t.y1) ** 2 + 2.0 * (t.z1 - t.y1) * gap))
    lhs4 = t.x3 - t.y2
    rhs4 = min(t.y2 - t.x2, _sqrt((t.y2 - t.z1) ** 2 + 2.0 * (t.y2 - t.z1) * gap))
    return {"line 3": (lhs3, rhs3), "line 4": (lhs4, rhs4)}


def check_inequalities(t):
    """Violated lines of the admissibility system, in order; empty if admissible."""
    tol = STRICT_TOL * t.scale
    out = _ordering(t, tol)
    for line, (lhs, rhs) in inequality_terms(t).items():
        if not _lt(lhs, rhs, tol):
            out.append(Violation(line, lhs, rhs))
    return out


class CaseReport(NamedTuple):
    case: str
    violations: list


def check_case_inequalities(t):
    """Case split on the position of z1 relative to x2.

    Each case has a triangle inequality on one side and a trapezoid
    inequality on the other; when z1 = x2 both collapse to triangles.
    """
    tol = STRICT_TOL * t.scale
    out = _ordering(t, tol)
    left_tri = (t.y1 - t.x1, t.x2 - t.y1)
    right_tri = (t.x3 - t.y2, t.y2 - t.x2)
    if abs(t.z1 - t.x2) <= tol:
        case = "z1=x2"
        checks = (("left-triangle", left_tri), ("right-triangle", right_tri))
    elif t.x2 < t.z1:
        case = "x2<z1"
        w = t.y2 - t.z1
        trap = (t.x3 - t.y2, _sqrt(w * w + 2.0 * w * (t.z1 - t.x2)))
        checks = (("left-triangle", left_tri), ("right-trapezoid", trap))
    else:
        case = "z1<x2"
        w = t.z1 - t.y1
        trap = (t.y1 - t.x1, _sqrt(w * w + 2.0 * w * (t.x2 - t.z1)))
        checks = (("right-triangle", right_tri), ("left-trapezoid", trap))
    for name, (lhs, rhs) in checks:
        if not _lt(lhs, rhs, tol):
            out.append(Violation(name, lhs, rhs))
    return CaseReport(case, out)


# ------------------------------------------------------------------ splines


@dataclass(frozen=True, eq=False)
class ConvexDerivativeSpline:
    """D = f' as local quadratics ``c0 + c1*u + c2*u**2`` with u = x - knots[k].

    ``f_knots[k]`` holds f(knots[k]) where f(x) is the integral of D from x1.
    """

    knots: np.ndarray
    coeffs: np.ndarray
    f_knots: np.ndarray
    fillet_radius: float
    source: Tuple3Arrangement

    @property
    def domain(self):
        return float(self.knots[0]), float(self.knots[-1])

    def to_dict(self):
        t = self.source
        return {
            "tuple": {"x1": t.x1, "x2": t.x2, "x3": t.x3, "y1": t.y1, "y2": t.y2, "z1": t.z1},
            "fillet_radius": self.fillet_radius,
            "knots": [float(k) for k in self.knots],
            "pieces": [[float(c) for c in row] for row in self.coeffs],
            "f_at_knots": [float(v) for v in self.f_knots],
        }

    @classmethod
    def from_dict(cls, doc):
        t = Tuple3Arrangement(**doc["tuple"])
        knots = np.array(doc["knots"], dtype=np.float64)
        coeffs = np.array(doc["pieces"], dtype=np.float64).reshape(-1, 3)
        if coeffs.shape[0] != knots.size - 1:
            raise InvalidInput("spline document: pieces and knots disagree")
        return cls(knots, coeffs, np.array(doc["f_at_knots"], dtype=np.float64),
                   float(doc["fillet_radius"]), t)


def evaluate(s, x, order=1):
    """f (order 0), f' = D (order 1) or f'' = D' (order 2) at ``x``."""
    if order not in (0, 1, 2):
        raise InvalidInput("order must be 0, 1 or 2")
    xa = np.asarray(x, dtype=np.float64)
    lo, hi = s.domain
    if np.any((xa < lo) | (xa > hi)) or np.any(np.isnan(xa)):
        raise InvalidInput(f"x outside domain [{lo}, {hi}]")
    k = np.clip(np.searchsorted(s.knots, xa, side="right") - 1, 0, s.coeffs.shape[0] - 1)
    u = xa - s.knots[k]
    c0, c1, c2 = s.coeffs[k, 0], s.coeffs[k, 1], s.coeffs[k, 2]
    if order == 0:
        val = s.f_knots[k] + u * (c0 + u * (c1 / 2.0 + u * c2 / 3.0))
    elif order == 1:
        val = c0 + u * (c1 + u * c2)
    else:
        val = c1 + 2.0 * u * c2
    return float(val) if val.ndim == 0 else val


def _profile_pieces(corners, slopes, anchor_x, eps, lo, hi):
    """Convex piecewise-linear profile with quadratic fillets at each corner.

    ``slopes[j]`` applies between ``corners[j-1]`` and ``corners[j]``; the
    profile vanishes at ``anchor_x``, which lies on the segment of slope
    ``slopes[1]``.
    """
    # vertex values, walking out from the anchor segment
    vals = [0.0] * len(corners)
    vals[0] = slopes[1] * (corners[0] - anchor_x)
    vals[1] = slopes[1] * (corners[1] - anchor_x)
    for j in range(2, len(corners)):
        vals[j] = vals[j - 1] + slopes[j] * (corners[j] - corners[j - 1])

    def line(j, x):
        # segment j spans (corners[j-1], corners[j])
        if j == 0:
            return vals[0] + slopes[0] * (x - corners[0])
        return vals[j - 1] + slopes[j] * (x - corners[j - 1])

    knots = [lo]
    coeffs = []
    for j, c in enumerate(corners):
        a = knots[-1]
        coeffs.append((line(j, a), slopes[j], 0.0))
        knots.append(c - eps)
        dm = slopes[j + 1] - slopes[j]
        coeffs.append((line(j, c - eps), slopes[j], dm / (4.0 * eps)))
        knots.append(c + eps)
    coeffs.append((line(len(corners), knots[-1]), slopes[-1], 0.0))
    knots.append(hi)
    return np.array(knots), np.array(coeffs)


def _piece_integral(c, u):
    return u * (c[..., 0] + u * (c[..., 1] / 2.0 + u * c[..., 2] / 3.0))


def _integral(knots, coeffs, a, b):
    """Exact integral of the piecewise quadratic over [a, b]."""
    total = 0.0
    for k in range(coeffs.shape[0]):
        left, right = max(a, knots[k]), min(b, knots[k + 1])
        if right <= left:
            continue
        c = coeffs[k]
        total += _piece_integral(c, right - knots[k]) - _piece_integral(c, left - knots[k])
    return total


def _split_at(knots, coeffs, points):
    knots = list(knots)
    coeffs = [tuple(c) for c in coeffs]
    for p in sorted(points):
        k = int(np.searchsorted(knots, p, side="right")) - 1
        if k < 0 or k >= len(coeffs) or knots[k] == p:
            continue
        c0, c1, c2 = coeffs[k]
        h = p - knots[k]
        coeffs[k + 1:k + 1] = [(c0 + h * (c1 + h * c2), c1 + 2.0 * h * c2, c2)]
        knots[k + 1:k + 1] = [p]
    return np.array(knots), np.array(coeffs)


def _solve_slope(integral_of, s_min):
    """Smallest-to-largest bracketing of the outer slope that zeroes an integral."""
    f_lo = integral_of(s_min)
    if not f_lo < 0.0:
        raise BalancingFailed()
    s_hi = 2.0 * s_min
    for _ in range(200):
        if integral_of(s_hi) > 0.0:
            break
        s_hi *= 2.0
    else:
        raise BalancingFailed()
    return brentq(integral_of, s_min, s_hi, xtol=1e-15 * s_hi, rtol=4.0 * np.finfo(float).eps, maxiter=200)


def _build_canonical(t, eps):
    """Construction for x2 <= z1 (up to tolerance). Returns knots, coeffs."""
    x1, x2, x3, y1, y2, z1 = t.as_tuple()
    lo, hi = x1 - 0.25 * t.span, x3 + 0.25 * t.span
    c_left = 0.5 * (x1 + y1)
    c_right = 0.5 * (y2 + x3)
    if z1 - x2 > 4.0 * eps:
        # slope -1 through y1 down to x2, slight descent to the z1 corner, then up through y2
        tilt = eps / (y2 - y1)
        s2 = ((x2 - y1) + tilt * (z1 - x2 - eps)) / (y2 - z1 - eps)
        c_mid = z1 + eps * (s2 - tilt) / (s2 + tilt)
        inner_corners = [x2, c_mid]
        inner_slopes = [-1.0, -tilt, s2]
    else:
        # z1 and x2 (nearly) coincide: a single corner whose fillet bottoms out at z1
        c_mid = (z1 * (y2 - y1) - eps * (y1 + y2)) / (y2 - y1 - 2.0 * eps)
        s2 = (c_mid - y1) / (y2 - c_mid)
        inner_corners = [c_mid]
        inner_slopes = [-1.0, s2]

    corners = [c_left] + inner_corners + [c_right]

    def assemble(sig1, sig2):
        slopes = [-sig1] + inner_slopes + [sig2]
        return _profile_pieces(corners, slopes, y1, eps, lo, hi)

    sig1 = _solve_slope(lambda s: _integral(*assemble(s, s2), x1, x2), 1.0)
    sig2 = _solve_slope(lambda s: _integral(*assemble(sig1, s), x2, x3), s2)
    return assemble(sig1, sig2)


def _reflect_pieces(knots, coeffs):
    h = np.diff(knots)
    c0, c1, c2 = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2]
    refl = np.stack([c0 + h * (c1 + h * c2), -c1 - 2.0 * h * c2, c2], axis=1)
    return -knots[::-1], refl[::-1].copy()


def _min_positive_gap(t, tol):
    vals = sorted(t.as_tuple())
    gaps = [b - a for a, b in zip(vals, vals[1:]) if b - a > tol]
    return min(gaps)


def construct_3nice(t, fillet_radius=None):
    """Spline D = f' realizing the admissible tuple ``t``.

    The fillet radius defaults to 1% of the smallest gap among the entries
    and is halved (up to eight times) whenever the area balance cannot be
    bracketed. The result is scaled so that min D = -1.
    """
    violations = check_inequalities(t)
    if violations:
        raise InadmissibleTuple(violations)
    tol = STRICT_TOL * t.scale
    mirrored = t.z1 < t.x2 - tol
    work = t.reflect() if mirrored else t
    eps = FILLET_FRACTION * _min_positive_gap(t, tol) if fillet_radius is None else float(fillet_radius)
    for _ in range(MAX_HALVINGS + 1):
        try:
            knots, coeffs = _build_canonical(work, eps)
            break
        except BalancingFailed:
            eps *= 0.5
    else:
        raise BalancingFailed()
    if mirrored:
        knots, coeffs = _reflect_pieces(knots, coeffs)
    knots, coeffs = _split_at(knots, coeffs, t.as_tuple())

    k_z = int(np.searchsorted(knots, t.z1))
    depth = -coeffs[k_z, 0]
    if not depth > 0.0:
        raise RolleError("constructed derivative is not negative at z1")
    coeffs = coeffs / depth

    integrals = _piece_integral(coeffs, np.diff(knots))
    f_knots = np.zeros(knots.size)
    f_knots[1:] = np.cumsum(integrals)
    f_knots -= f_knots[int(np.searchsorted(knots, t.x1))]
    return ConvexDerivativeSpline(knots, coeffs, f_knots, eps, t)


# ----------------------------------------------------------------- recovery


def _piece_poly(s, k, order):
    """Local coefficients (descending powers of u) of f, D or D' on piece k."""
    c0, c1, c2 = s.coeffs[k]
    if order == 0:
        return [c2 / 3.0, c1 / 2.0, c0, s.f_knots[k]]
    if order == 1:
        return [c2, c1, c0]
    return [2.0 * c2, c1]


def spline_zeros(s, order):
    """Zeros of f, D or D' by sign changes between monotone sample points.

    Samples are the knots plus the interior critical points of every piece,
    so the function is monotone between consecutive samples and each sign
    change brackets exactly one zero.
    """
    pts = [float(s.knots[0])]
    for k in range(s.coeffs.shape[0]):
        a, b = float(s.knots[k]), float(s.knots[k + 1])
        crit = np.roots(np.polyder(np.array(_piece_poly(s, k, order)))) if order < 2 else []
        for r in crit:
            if abs(r.imag) == 0.0 and 0.0 < r.real < b - a:
                pts.append(a + float(r.real))
        pts.append(b)
    pts = np.unique(np.array(pts))
    vals = evaluate(s, pts, order)
    f = lambda x: evaluate(s, x, order)  # noqa: E731
    found = []
    for j in range(pts.size):
        if vals[j] == 0.0:
            found.append(float(pts[j]))
        elif j + 1 < pts.size and vals[j] * vals[j + 1] < 0.0:
            found.append(brentq(f, pts[j], pts[j + 1], xtol=1e-15, rtol=4.0 * np.finfo(float).eps))
    return found


def recovered_arrangement(s):
    """Arrangement read back from the spline: zeros of f, f' and f''."""
    fz = spline_zeros(s, 0)
    dz = spline_zeros(s, 1)
    d2z = spline_zeros(s, 2)
    if (len(fz), len(dz), len(d2z)) != (3, 2, 1):
        raise RolleError(f"spline has {len(fz)}, {len(dz)}, {len(d2z)} zeros instead of 3, 2, 1")
    return Tuple3Arrangement(fz[0], fz[1], fz[2], dz[0], dz[1], d2z[0])
