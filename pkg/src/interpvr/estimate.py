"""Sample variance ratios and a Monte Carlo harness that checks them
against the closed forms."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import analytic
from .dgp import DgpSpec, SegmentedSeries, Variant, benchmarks, replication_seed, simulate
from .errors import DegenerateSeriesError, InsufficientDataError, InvalidSpecError
from .interp import interpolate, to_segment_index


@dataclass(frozen=True)
class McReport:
    spec: DgpSpec
    s: int
    variant: Variant
    n_reps: int
    n_segments: int
    vr_mean: float
    vr_stderr: float
    vr_analytic: float
    z_score: float


def _values(series) -> np.ndarray:
    if isinstance(series, SegmentedSeries):
        return series.values
    v = np.asarray(series, dtype=float)
    if v.ndim != 1:
        raise ValueError("series must be one-dimensional")
    return v


def _sample_var(d: np.ndarray, demean: bool) -> float:
    m = len(d)
    if demean:
        d = d - d.mean()
    return float(np.dot(d, d) / (m - 1))


def diff_var(series, k: int = 1, demean: bool = True) -> float:
    """Sample variance of the overlapping k-differences, divisor m - 1."""
    y = _values(series)
    if int(k) != k or k < 1:
        raise InvalidSpecError(f"k must be a positive integer, got {k}")
    k = int(k)
    if len(y) < k + 2:
        raise InsufficientDataError(f"need at least {k + 2} observations for k={k}")
    return _sample_var(y[k:] - y[:-k], demean)


def vr_hat(series, k: int, demean: bool = True) -> float:
    """diff_var(k) / (k * diff_var(1))."""
    if int(k) != k or k < 2:
        raise InvalidSpecError(f"k must be an integer >= 2, got {k}")
    v1 = diff_var(series, 1, demean)
    if v1 == 0:
        raise DegenerateSeriesError("one-period differences have zero variance")
    return diff_var(series, k, demean) / (k * v1)


def phase_vars(series: SegmentedSeries, k: int | None = None) -> np.ndarray:
    """Variance of the k-differences grouped by the phase of their later
    observation. Returns one value per phase 1..s."""
    s = series.s
    k = s if k is None else int(k)
    if k < 1:
        raise InvalidSpecError(f"k must be >= 1, got {k}")
    if series.n_segments < 3 or len(series) < k + 2 * s:
        raise InsufficientDataError("need at least 3 segments")
    y = series.values
    d = y[k:] - y[:-k]
    # position p in the stored array is linear index T = s*(origin-1) + p + 1
    T0 = s * (series.origin_segment - 1) + k + 1
    phase = np.array([to_segment_index(T0 + j, s)[1] for j in range(s)])
    out = np.empty(s)
    for j in range(s):
        out[phase[j] - 1] = _sample_var(d[j::s], True)
    return out


def _one_rep(args) -> float:
    spec, s, variant, n_segments, seed, burn_in = args
    path = simulate(spec, s, n_segments, seed, burn_in)
    if variant is Variant.INTERPOLATED:
        path = interpolate(benchmarks(path), s)
    return vr_hat(path, s)


def mc_compare(spec: DgpSpec, s: int, variant, n_reps: int, n_segments: int, seed: int,
               burn_in: int | None = None, workers: int = 1) -> McReport:
    """Simulate ``n_reps`` paths, compute vr_hat with k = s on each and
    compare the mean with the closed-form ratio.

    Replication r uses ``replication_seed(seed, r)``. Results are collected
    in replication order, so ``workers`` does not affect the output.
    """
    variant = Variant(variant)
    if n_reps < 2:
        raise InvalidSpecError("n_reps must be >= 2")
    target = analytic.variance_ratio(spec, variant, s).vr
    jobs = [(spec, s, variant, n_segments, replication_seed(seed, r), burn_in)
            for r in range(n_reps)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            vals = np.array(list(ex.map(_one_rep, jobs)))
    else:
        vals = np.array([_one_rep(j) for j in jobs])
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(n_reps))
    z = (mean - target) / se if se > 0 else (0.0 if mean == target else math.copysign(math.inf, mean - target))
    return McReport(spec, int(s), variant, int(n_reps), int(n_segments), mean, se, target, z)
