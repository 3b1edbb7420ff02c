"""Sampling experiments on realizable symbolic sequences and the quartic audit."""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import multiprocessing as mp

import numpy as np

from . import kernels
from .combinatorics import MAX_ENUM_N, flat_count
from .errors import InternalConsistencyError, InvalidInput
from .poly_core import RootList, arrangement, symbolic_sequence
from .words import is_rolle_word

__all__ = [
    "AndersonReport",
    "ClassificationResult",
    "QuarticNormalForm",
    "RatioEstimate",
    "SamplerConfig",
    "ScanReport",
    "anderson_check",
    "anderson_random",
    "anderson_scan",
    "classify",
    "normalize_quartic",
    "ratio_estimate",
    "sample_roots",
]

CHUNK = 65536
DEFAULT_SCHEME = "gap-exponential"


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    seed: int
    scheme: str = DEFAULT_SCHEME
    half_width: float = 5.0

    def __post_init__(self):
        if self.scheme not in kernels.SCHEMES:
            raise InvalidInput(f"unknown scheme {self.scheme!r}; choose from {', '.join(kernels.SCHEMES)}")
        if not 1 <= int(self.n) <= 12:
            raise InvalidInput("sampler supports 1 <= n <= 12")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidInput("seed must fit in an unsigned 64-bit integer")
        if not self.half_width > 0.0:
            raise InvalidInput("half_width must be positive")

    @property
    def scheme_code(self):
        return kernels.SCHEMES.index(self.scheme)


def sample_batch(cfg, start, count):
    return kernels.sample_batch(cfg.scheme_code, cfg.n, cfg.half_width, cfg.seed, start, count)


def sample_roots(cfg, index):
    """The root list drawn for ``index``; depends only on (cfg, index)."""
    return RootList(sample_batch(cfg, index, 1)[0])


@dataclass
class ClassificationResult:
    n: int
    seed: int
    scheme: str
    half_width: float
    budget: int
    samples_attempted: int = 0
    samples_strict: int = 0
    counts: dict = field(default_factory=dict)
    witness_index: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def distinct(self):
        return len(self.counts)

    def config(self):
        return SamplerConfig(self.n, self.seed, self.scheme, self.half_width)

    def validate(self):
        """Raise if any stored invariant fails; returns self for chaining."""
        for key in self.counts:
            if not is_rolle_word(key, self.n):
                raise InternalConsistencyError(f"classified key {key} is not admissible")
        if sum(self.counts.values()) != self.samples_strict:
            raise InternalConsistencyError("counts do not sum to the strict sample count")
        for key, roots in self.witnesses.items():
            if str(symbolic_sequence(arrangement(roots))) != key:
                raise InternalConsistencyError(f"witness for {key} does not reproduce it")
        return self

    def to_dict(self):
        return {
            "n": self.n,
            "seed": self.seed,
            "scheme": self.scheme,
            "half_width": self.half_width,
            "budget": self.budget,
            "samples_attempted": self.samples_attempted,
            "samples_strict": self.samples_strict,
            "distinct": self.distinct,
            "counts": dict(self.counts),
            "witnesses": {
                k: {"index": self.witness_index[k], "roots": list(self.witnesses[k].roots)}
                for k in self.counts
            },
        }

    @classmethod
    def from_dict(cls, doc):
        res = cls(doc["n"], doc["seed"], doc["scheme"], doc["half_width"], doc["budget"],
                  doc["samples_attempted"], doc["samples_strict"], dict(doc["counts"]))
        for k, w in doc["witnesses"].items():
            res.witness_index[k] = w["index"]
            res.witnesses[k] = RootList(w["roots"])
        return res


def _classify_chunk(args):
    cfg, start, count = args
    roots = sample_batch(cfg, start, count)
    values = kernels.arrangement_batch(roots)
    words, strict = kernels.words_batch(values, kernels.row_labels(cfg.n))
    idx = np.flatnonzero(strict)
    found = {}
    if idx.size:
        uniq, first, cnt = np.unique(words[idx], axis=0, return_index=True, return_counts=True)
        for w, f, c in zip(uniq, first, cnt):
            found[w.tobytes().decode("ascii")] = (int(c), start + int(idx[f]))
    return count, int(idx.size), found


def classify(cfg, budget, workers=1):
    """Sample ``budget`` root lists and tally their symbolic sequences.

    Chunks are fixed-size slices of the index range and the merge only adds
    counts and keeps the smallest witness index, so the result does not
    depend on ``workers`` or on completion order.
    """
    if budget < 1:
        raise InvalidInput("budget must be at least 1")
    jobs = [(cfg, s, min(CHUNK, budget - s)) for s in range(0, budget, CHUNK)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers, mp_context=mp.get_context("spawn")) as pool:
            parts = list(pool.map(_classify_chunk, jobs))
    else:
        parts = [_classify_chunk(job) for job in jobs]

    merged = {}
    attempted = strict = 0
    for count, n_strict, found in parts:
        attempted += count
        strict += n_strict
        for key, (c, first) in found.items():
            prev = merged.get(key)
            merged[key] = (c, first) if prev is None else (prev[0] + c, min(prev[1], first))
    res = ClassificationResult(cfg.n, cfg.seed, cfg.scheme, cfg.half_width, budget, attempted, strict)
    for key in sorted(merged):
        c, first = merged[key]
        res.counts[key] = c
        res.witness_index[key] = first
        res.witnesses[key] = sample_roots(cfg, first)
    return res


@dataclass(frozen=True)
class RatioEstimate:
    """Observed distinct sequences over the admissible count.

    ``distinct`` only counts what sampling happened to reach, so ``ratio`` is
    a lower bound for the realizable fraction.
    """

    distinct: int
    flat: int
    ratio: float
    kind: str = "lower bound"


def ratio_estimate(n, budget, cfg=None, workers=1):
    if not 1 <= n <= MAX_ENUM_N:
        raise InvalidInput(f"n must be within 1..{MAX_ENUM_N}")
    if cfg is None:
        raise InvalidInput("a sampler configuration with an explicit seed is required")
    if cfg.n != n:
        raise InvalidInput("configuration degree does not match n")
    res = classify(cfg, budget, workers=workers)
    flat = flat_count(n)
    return RatioEstimate(res.distinct, flat, res.distinct / flat)


# ------------------------------------------------------------ quartic audit

Z1 = -math.sqrt(1.0 / 6.0)
Z2 = math.sqrt(1.0 / 6.0)


@dataclass(frozen=True)
class QuarticNormalForm:
    """p(x) = x^4 - x^2 + u x + v."""

    u: float
    v: float

    def __call__(self, x):
        x2 = x * x
        return x2 * x2 - x2 + self.u * x + self.v

    def derivative(self, x):
        return 4.0 * x * x * x - 2.0 * x + self.u


def normalize_quartic(r):
    """Affine normal form of the monic quartic with roots ``r``.

    Centering removes the cubic term; scaling by sqrt(-c2) makes the
    quadratic coefficient -1. Power sums are accumulated with fsum, so
    symmetric root sets give u == 0 exactly.
    """
    if not isinstance(r, RootList):
        r = RootList(r)
    if r.n != 4:
        raise InvalidInput("normalize_quartic needs exactly four roots")
    mean = math.fsum(r.roots) / 4.0
    s = [x - mean for x in r.roots]
    p2 = math.fsum(x * x for x in s)
    p3 = math.fsum(x * x * x for x in s)
    p4 = math.fsum((x * x) * (x * x) for x in s)
    # Newton identities with e1 = 0
    c2 = -p2 / 2.0
    c1 = -p3 / 3.0
    c0 = (p2 * p2 / 2.0 - p4) / 4.0
    if not c2 < 0.0:
        raise InternalConsistencyError("centered quartic with four real roots must have c2 < 0")
    lam = math.sqrt(-c2)
    return QuarticNormalForm(c1 / lam**3, c0 / lam**4)


def _bisect(f, lo, hi):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AndersonReport:
    u: float
    v: float
    p_at_z1: float
    p_at_z2: float
    real_rooted: bool
    roots: tuple = None
    critical_points: tuple = None
    hypotheses_hold: bool = False
    conclusion_holds: bool = None
    u_negative: bool = None

    @property
    def counterexample(self):
        return self.real_rooted and self.hypotheses_hold and not self.conclusion_holds


def anderson_check(q):
    """Audit one normal-form quartic against the y2 < t1 claim.

    Real-rootedness is decided without a discriminant: p' must have three
    real critical points (sign test at the zeros of p'') and p must
    alternate in sign across them.
    """
    u, v = float(q.u), float(q.v)
    base = dict(u=u, v=v, p_at_z1=q(Z1), p_at_z2=q(Z2))
    if not (q.derivative(Z1) > 0.0 and q.derivative(Z2) < 0.0):
        return AndersonReport(real_rooted=False, **base)
    bd = 1.0 + max(0.5, abs(u) / 4.0)
    y = (_bisect(q.derivative, -bd, Z1), _bisect(q.derivative, Z1, Z2), _bisect(q.derivative, Z2, bd))
    if not (q(y[0]) < 0.0 and q(y[1]) > 0.0 and q(y[2]) < 0.0):
        return AndersonReport(real_rooted=False, critical_points=y, **base)
    bp = 1.0 + max(1.0, abs(u), abs(v))
    x = (_bisect(q, -bp, y[0]), _bisect(q, y[0], y[1]), _bisect(q, y[1], y[2]), _bisect(q, y[2], bp))
    hyp = x[1] < Z1 and x[2] < Z2
    return AndersonReport(
        real_rooted=True,
        roots=x,
        critical_points=y,
        hypotheses_hold=hyp,
        conclusion_holds=(y[1] < 0.0) if hyp else None,
        u_negative=u < 0.0,
        **base,
    )


@dataclass(frozen=True)
class ScanReport:
    points: int
    real_rooted: int
    hypotheses: int
    counterexamples: int


def _scan(u, v):
    status = kernels.anderson_batch(u, v)
    real = (status & 1) != 0
    hyp = real & ((status & 2) != 0)
    bad = hyp & ((status & 4) == 0)
    return ScanReport(int(u.size), int(real.sum()), int(hyp.sum()), int(bad.sum()))


def anderson_scan(grid_density, domain=((-0.5, 0.5), (-0.5, 0.5))):
    """Grid audit; counterexamples should always be 0."""
    if grid_density < 2:
        raise InvalidInput("grid density must be at least 2")
    (u0, u1), (v0, v1) = domain
    if u1 < u0 or v1 < v0:
        return ScanReport(0, 0, 0, 0)
    uu, vv = np.meshgrid(np.linspace(u0, u1, grid_density), np.linspace(v0, v1, grid_density))
    return _scan(uu.ravel(), vv.ravel())


def anderson_random(samples, seed, domain=((-0.5, 0.5), (-0.5, 0.5))):
    """Audit at ``samples`` counter-based uniform points of the box."""
    (u0, u1), (v0, v1) = domain
    if samples < 1 or u1 < u0 or v1 < v0:
        return ScanReport(0, 0, 0, 0)
    key = kernels.vec.splitmix64(np.uint64(seed))
    h = kernels.vec.sample_key(key, np.arange(samples, dtype=np.uint64))
    u = u0 + (u1 - u0) * kernels.vec.lane_uniform(h, 0)
    v = v0 + (v1 - v0) * kernels.vec.lane_uniform(h, 1)
    return _scan(u, v)
