"""Segmented linear interpolation between benchmark observations."""

from __future__ import annotations

import numpy as np

from .dgp import SegmentedSeries
from .errors import InsufficientDataError, InvalidSpecError


def to_segment_index(T: int, s: int) -> tuple[int, int]:
    """Map linear index ``T`` (1-based) to ``(t, i)`` with ``T = s(t-1) + i``."""
    t, r = divmod(int(T) - 1, int(s))
    return t + 1, r + 1


def from_segment_index(t: int, i: int, s: int) -> int:
    return int(s) * (int(t) - 1) + int(i)


def interpolate(benchmarks, s: int) -> SegmentedSeries:
    """Fill each segment with the straight line between consecutive
    benchmarks.

    The first benchmark only serves as the left anchor, so the output
    covers segments 2..n and has ``origin_segment == 2``. Phase ``s`` of
    every output segment is the benchmark value itself.
    """
    y = np.asarray(benchmarks, dtype=float)
    if y.ndim != 1:
        raise ValueError("benchmarks must be one-dimensional")
    if int(s) != s or s < 2:
        raise InvalidSpecError(f"s must be an integer >= 2, got {s}")
    if len(y) < 2:
        raise InsufficientDataError("need at least 2 benchmarks")
    s = int(s)
    left = y[:-1, None]
    right = y[1:, None]
    i = np.arange(1, s + 1)
    x = (i * right + (s - i) * left) / s
    # rounding can push a value an ulp past its brackets
    x = np.clip(x, np.minimum(left, right), np.maximum(left, right))
    x[:, -1] = y[1:]
    return SegmentedSeries(x.ravel(), s, origin_segment=2)
