"""Seedable simulators for AR(1), MA(1), ARMA(1,1), random walk and
random walk with ARMA(1,1) errors, returned in segmented form."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import InsufficientDataError, InvalidSpecError


class Model(str, enum.Enum):
    AR1 = "ar1"
    MA1 = "ma1"
    ARMA11 = "arma11"
    RW = "rw"
    RW_ARMA11 = "rw-arma11"

    @property
    def uses_alpha(self) -> bool:
        return self in (Model.AR1, Model.ARMA11, Model.RW_ARMA11)

    @property
    def uses_theta(self) -> bool:
        return self in (Model.MA1, Model.ARMA11, Model.RW_ARMA11)

    @property
    def integrated(self) -> bool:
        return self in (Model.RW, Model.RW_ARMA11)


class Variant(str, enum.Enum):
    ORIGINAL = "original"
    INTERPOLATED = "interpolated"


@dataclass(frozen=True)
class DgpSpec:
    """One of the five processes plus its parameters.

    Innovations are Gaussian with variance ``sigma2``. ``sigma2 == 0`` is
    accepted here so that deterministic drift lines can be simulated; the
    closed forms in :mod:`interpvr.analytic` require ``sigma2 > 0``.
    """

    model: Model
    alpha: float = 0.0
    theta: float = 0.0
    mu: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        for name in ("alpha", "theta", "mu", "sigma2"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidSpecError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        m = self.model
        if m.uses_alpha:
            if abs(self.alpha) >= 1:
                raise InvalidSpecError(f"|alpha| must be < 1, got {self.alpha}")
        elif self.alpha != 0:
            raise InvalidSpecError(f"alpha must be 0 for {m.value}")
        if m.uses_theta:
            if abs(self.theta) >= 1:
                raise InvalidSpecError(f"|theta| must be < 1, got {self.theta}")
        elif self.theta != 0:
            raise InvalidSpecError(f"theta must be 0 for {m.value}")
        if not m.integrated and self.mu != 0:
            raise InvalidSpecError(f"mu must be 0 for stationary model {m.value}")
        if self.sigma2 < 0:
            raise InvalidSpecError(f"sigma2 must be >= 0, got {self.sigma2}")

    def scaled(self, c: float) -> "DgpSpec":
        """Same process with innovation variance multiplied by ``c``."""
        return DgpSpec(self.model, self.alpha, self.theta, self.mu, self.sigma2 * c)


@dataclass(frozen=True, eq=False)
class SegmentedSeries:
    """A series stored in whole segments of length ``s``.

    ``values[0]`` is phase 1 of segment ``origin_segment``.
    """

    values: np.ndarray
    s: int
    origin_segment: int = 1

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if int(self.s) != self.s or self.s < 1:
            raise InvalidSpecError(f"s must be a positive integer, got {self.s}")
        if len(v) % self.s:
            raise ValueError(f"length {len(v)} is not a multiple of s={self.s}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "origin_segment", int(self.origin_segment))

    def __len__(self):
        return len(self.values)

    @property
    def n_segments(self) -> int:
        return len(self.values) // self.s

    def segment_index(self) -> np.ndarray:
        return self.origin_segment + np.arange(len(self.values)) // self.s

    def phase_index(self) -> np.ndarray:
        return np.arange(len(self.values)) % self.s + 1

    def as_matrix(self) -> np.ndarray:
        """Values reshaped to (n_segments, s)."""
        return self.values.reshape(-1, self.s)


def default_burn_in(spec: DgpSpec) -> int:
    if spec.model in (Model.AR1, Model.ARMA11, Model.RW_ARMA11):
        return max(200, math.ceil(20 / (1 - abs(spec.alpha))))
    return 0


def replication_seed(master: int, rep: int) -> int:
    """Seed for replication ``rep``: the first 64-bit word of a
    SeedSequence keyed by ``master`` with spawn key ``(rep,)``."""
    ss = np.random.SeedSequence(int(master), spawn_key=(int(rep),))
    return int(ss.generate_state(1, np.uint64)[0])


def innovations(seed: int, n: int, sigma2: float) -> np.ndarray:
    """``n`` Gaussian draws with variance ``sigma2`` from a PCG64 stream."""
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) * math.sqrt(sigma2)


def simulate(spec: DgpSpec, s: int, n_segments: int, seed: int,
             burn_in: int | None = None) -> SegmentedSeries:
    """Simulate ``s * n_segments`` observations.

    Stationary parts start from zero and are run for ``burn_in`` extra
    periods that are discarded. Models with an MA term draw one extra
    pre-sample innovation. Random-walk levels start at 0 before the first
    retained increment.
    """
    if int(s) != s or s < 1:
        raise InvalidSpecError(f"s must be a positive integer, got {s}")
    if n_segments < 2:
        raise InsufficientDataError(f"n_segments must be >= 2, got {n_segments}")
    if burn_in is None:
        burn_in = default_burn_in(spec)
    if burn_in < 0:
        raise InvalidSpecError(f"burn_in must be >= 0, got {burn_in}")
    n = int(s) * int(n_segments)
    m = spec.model

    if m is Model.RW:
        eps = innovations(seed, n, spec.sigma2)
        return SegmentedSeries(np.cumsum(spec.mu + eps), s)

    pre = 1 if m.uses_theta else 0
    eps = innovations(seed, pre + burn_in + n, spec.sigma2)
    if pre:
        u = eps[1:] + spec.theta * eps[:-1]
    else:
        u = eps
    if m.uses_alpha:
        u = lfilter([1.0], [1.0, -spec.alpha], u)
    u = u[burn_in:]

    if m is Model.RW_ARMA11:
        return SegmentedSeries(np.cumsum(spec.mu + u), s)
    return SegmentedSeries(u, s)


def benchmarks(series: SegmentedSeries) -> np.ndarray:
    """The phase-``s`` value of every segment."""
    return series.values[series.s - 1::series.s].copy()
