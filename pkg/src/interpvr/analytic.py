"""Closed-form short variances, long variances (lag k = s), per-phase long
variances and variance ratios for original and interpolated series.

The private ``_unit_*`` helpers work on numpy arrays of alpha/theta with
unit innovation variance so that grids can be evaluated in one shot. The
public functions take a :class:`DgpSpec` and return plain floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dgp import DgpSpec, Model, Variant
from .errors import InvalidSpecError


@dataclass(frozen=True)
class ArmaMoments:
    """Autocovariances of an ARMA(1,1) with unit-root-free AR part."""

    alpha: float
    gamma0: float
    gamma1: float
    rho1: float
    process_variance: float

    def gamma(self, j: int) -> float:
        j = abs(int(j))
        if j == 0:
            return self.gamma0
        return self.alpha ** (j - 1) * self.gamma1


@dataclass(frozen=True)
class AgSums:
    """Weighted geometric sums used by the integrated model.

    d = sum_{j=1}^{s-1} (s-j) a^(j-1)
    b = sum_{j=0}^{s-1} (s-j) a^(s+j-1)
    c = sum_{j=1}^{s-1} (s-j) a^(s-j-1)
    """

    d: float
    b: float
    c: float


@dataclass(frozen=True)
class VarianceSummary:
    spec: DgpSpec
    variant: Variant
    s: int
    k: int
    short_var: float
    long_var: float
    vr: float
    provenance: str = "analytic"


# ---------------------------------------------------------------- helpers

def one_minus_pow(a, n: int):
    """``1 - a**n`` without cancellation when ``a`` is close to 1."""
    a = np.asarray(a, dtype=float)
    n = int(n)
    if n == 0:
        return np.zeros_like(a)
    with np.errstate(divide="ignore"):
        m = -np.expm1(n * np.log(np.abs(a)))
    if n % 2:
        m = np.where(a < 0, 2.0 - m, m)
    return m


def _check_s(s):
    if isinstance(s, bool) or int(s) != s or s < 2:
        raise InvalidSpecError(f"s must be an integer >= 2, got {s}")
    return int(s)


def _check_unit(name, v):
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)) or np.any(np.abs(v) >= 1):
        raise InvalidSpecError(f"|{name}| must be < 1")
    return v


def _check_sigma2(sigma2):
    if not (sigma2 > 0 and math.isfinite(sigma2)):
        raise InvalidSpecError(f"sigma2 must be > 0, got {sigma2}")
    return float(sigma2)


def _check_spec(spec: DgpSpec, s) -> int:
    if not isinstance(spec, DgpSpec):
        raise TypeError("expected a DgpSpec")
    _check_sigma2(spec.sigma2)
    return _check_s(s)


def _ag(a, s):
    a = np.asarray(a, dtype=float)
    om = 1.0 - a
    om2 = om * om
    with np.errstate(divide="ignore", invalid="ignore"):
        d = (s * om - one_minus_pow(a, s)) / om2
        b = a ** (s - 1) * (s * om - a * one_minus_pow(a, s)) / om2
        c = (one_minus_pow(a, s - 1) - (s - 1) * om * a ** (s - 1)) / om2
    # direct sums at a = 0
    zero = a == 0
    d = np.where(zero, s - 1.0, d)
    b = np.where(zero, 0.0, b)
    c = np.where(zero, 1.0, c)
    return d, b, c


def _arma_parts(a, t):
    """A = 1 + t^2 + 2at, B = (1 + at)(a + t), gamma0, gamma1 at sigma2 = 1."""
    A = 1.0 + t * t + 2.0 * a * t
    B = (1.0 + a * t) * (a + t)
    om2 = (1.0 - a) * (1.0 + a)
    return A, B, A / om2, B / om2


def _unit_variances(model: Model, variant: Variant, s: int, a, t):
    """(short, long) at unit innovation variance."""
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    s2 = s * s
    interp = variant is Variant.INTERPOLATED

    if model is Model.AR1:
        om2 = (1.0 - a) * (1.0 + a)
        if not interp:
            return 2.0 / (1.0 + a), 2.0 * one_minus_pow(a, s) / om2
        a_s = a ** s
        short = 2.0 * one_minus_pow(a, s) / (s2 * om2)
        long = one_minus_pow(a, s) * (3 * s2 + a_s * s2 - a_s + 3) / (3 * s2 * om2)
        return short, long

    if model is Model.MA1:
        q = 1.0 + t * t
        if not interp:
            return 2.0 * q - 2.0 * t, 2.0 * q
        return 2.0 * q / s2, (s2 + 1) * q / s2

    if model is Model.ARMA11:
        A, B, g0, g1 = _arma_parts(a, t)
        om2 = (1.0 - a) * (1.0 + a)
        if not interp:
            short = (a - 1.0) ** 2 * g0 + (1.0 + t * t) + 2.0 * (a - 1.0) * t
            long = (one_minus_pow(a, s) ** 2 * g0 + A * one_minus_pow(a, 2 * s) / om2
                    - 2.0 * a ** (s - 1) * t)
            return short, long
        short = 2.0 / (s2 * om2) * (one_minus_pow(a, s) * (1.0 + a * t + t * t)
                                    + a * t * one_minus_pow(a, s - 2))
        cross = (2.0 * a ** (s - 1) - a ** (2 * s - 1)) * g1 - g0
        long = (2 * s2 + 1) / 3.0 * short + (s2 - 1) / (3.0 * s2) * cross
        return short, long

    if model is Model.RW:
        one = np.ones(np.broadcast(a, t).shape)
        if not interp:
            return one, s * one
        return one / s, (2 * s2 + 1) / (3.0 * s) * one

    if model is Model.RW_ARMA11:
        A, B, g0, g1 = _arma_parts(a, t)
        d, b, c = _ag(a, s)
        v = s * g0 + 2.0 * g1 * d
        if not interp:
            return g0, v
        long = (2 * s2 + 1) / (3.0 * s2) * v + (s2 - 1) / (3.0 * s2) * g1 * (c + b)
        return v / s2, long

    raise InvalidSpecError(f"unknown model {model!r}")


def _unit_phase(model: Model, s: int, i: int, a, t):
    """Phase-i long variance of the interpolated series at unit sigma2."""
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    s2 = s * s
    w_level = s2 - 2 * s * i + 2 * i * i   # = i^2 + (s - i)^2
    w_cross = 2 * i * (s - i)

    if model is Model.RW:
        return w_level / s * np.ones(np.broadcast(a, t).shape)
    if model is Model.RW_ARMA11:
        A, B, g0, g1 = _arma_parts(a, t)
        d, b, c = _ag(a, s)
        v = s * g0 + 2.0 * g1 * d
        return (w_level * v + w_cross * g1 * (c + b)) / s2
    if model is Model.AR1:
        short, _ = _unit_variances(model, Variant.INTERPOLATED, s, a, t)
        om2 = (1.0 - a) * (1.0 + a)
        return w_level * short - w_cross / s2 * one_minus_pow(a, s) ** 2 / om2
    if model is Model.MA1:
        return (1.0 + t * t) * (2 * s2 - 6 * s * i + 6 * i * i) / s2
    if model is Model.ARMA11:
        short, _ = _unit_variances(model, Variant.INTERPOLATED, s, a, t)
        A, B, g0, g1 = _arma_parts(a, t)
        cross = (2.0 * a ** (s - 1) - a ** (2 * s - 1)) * g1 - g0
        return w_level * short + w_cross / s2 * cross
    raise InvalidSpecError(f"unknown model {model!r}")


def _params(model: Model, alpha, theta):
    a = _check_unit("alpha", alpha) if model.uses_alpha else np.asarray(alpha, dtype=float)
    t = _check_unit("theta", theta) if model.uses_theta else np.asarray(theta, dtype=float)
    return a, t


# ---------------------------------------------------------------- public

def arma_moments(alpha: float, theta: float, sigma2: float) -> ArmaMoments:
    a = float(_check_unit("alpha", alpha))
    t = float(_check_unit("theta", theta))
    sigma2 = _check_sigma2(sigma2)
    A, B, g0, g1 = _arma_parts(a, t)
    g0 *= sigma2
    g1 *= sigma2
    return ArmaMoments(alpha=a, gamma0=g0, gamma1=g1, rho1=g1 / g0, process_variance=g0)


def ag_sums(alpha: float, s: int) -> AgSums:
    s = _check_s(s)
    a = _check_unit("alpha", alpha)
    d, b, c = _ag(a, s)
    return AgSums(float(d), float(b), float(c))


def short_var(spec: DgpSpec, variant, s: int) -> float:
    s = _check_spec(spec, s)
    a, t = _params(spec.model, spec.alpha, spec.theta)
    short, _ = _unit_variances(spec.model, Variant(variant), s, a, t)
    return float(short) * spec.sigma2


def long_var(spec: DgpSpec, variant, s: int) -> float:
    """Lag-s difference variance; for the interpolated series this is the
    average over the s phases."""
    s = _check_spec(spec, s)
    a, t = _params(spec.model, spec.alpha, spec.theta)
    _, long = _unit_variances(spec.model, Variant(variant), s, a, t)
    return float(long) * spec.sigma2


def long_var_phase(spec: DgpSpec, s: int, i: int, variant=Variant.INTERPOLATED) -> float:
    """Variance of ``x[t, i] - x[t-1, i]`` for the interpolated series."""
    s = _check_spec(spec, s)
    if Variant(variant) is not Variant.INTERPOLATED:
        raise InvalidSpecError("per-phase long variance is defined for the interpolated series only")
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= s:
        raise InvalidSpecError(f"phase must be in 1..{s}, got {i}")
    a, t = _params(spec.model, spec.alpha, spec.theta)
    return float(_unit_phase(spec.model, s, int(i), a, t)) * spec.sigma2


def long_var_phases(spec: DgpSpec, s: int) -> np.ndarray:
    """All s per-phase long variances of the interpolated series."""
    s = _check_spec(spec, s)
    a, t = _params(spec.model, spec.alpha, spec.theta)
    i = np.arange(1, s + 1)
    return _unit_phase(spec.model, s, i, a, t) * spec.sigma2


def variance_ratio(spec: DgpSpec, variant, s: int) -> VarianceSummary:
    """long_var / (s * short_var) with k = s."""
    s = _check_spec(spec, s)
    variant = Variant(variant)
    short = short_var(spec, variant, s)
    long = long_var(spec, variant, s)
    return VarianceSummary(spec, variant, s, s, short, long, long / (s * short))


def vr_array(model, variant, s: int, alpha, theta) -> np.ndarray:
    """Variance ratio evaluated elementwise over broadcast alpha/theta."""
    model = Model(model)
    s = _check_s(s)
    a, t = _params(model, alpha, theta)
    short, long = _unit_variances(model, Variant(variant), s, a, t)
    return np.broadcast_to(long / (s * short), np.broadcast(a, t).shape).copy()


def vr_closed_form(spec: DgpSpec, variant, s: int) -> float:
    """Variance ratio from the simplified single-expression forms.

    Algebraically equal to :func:`variance_ratio`; kept as a second route
    for cross-checking.
    """
    s = _check_spec(spec, s)
    variant = Variant(variant)
    interp = variant is Variant.INTERPOLATED
    a, t = spec.alpha, spec.theta
    m = spec.model
    if m is Model.AR1:
        if not interp:
            return float(one_minus_pow(a, s)) / (s * (1 - a))
        a_s = a ** s
        return (s * s * (3 + a_s) + 3 - a_s) / (6 * s)
    if m is Model.MA1:
        if not interp:
            return (1 + t * t) / (s * (1 + t * t - t))
        return (s * s + 1) / (2 * s)
    if m is Model.RW:
        return 1.0 if not interp else (2 * s * s + 1) / (3 * s)
    if m is Model.ARMA11:
        A = 1 + t * t + 2 * a * t
        B = (1 + a * t) * (a + t)
        if not interp:
            return (A - a ** (s - 1) * B) / (s * (1 - a) * (1 - t + t * t + a * t))
        q = float(one_minus_pow(a, s)) * (1 + a * t + t * t) + a * t * float(one_minus_pow(a, s - 2))
        return ((2 * s * s + 1) / (3 * s)
                + (s * s - 1) / (6 * s) * (a ** (s - 1) * (2 - a ** s) * B - A) / q)
    if m is Model.RW_ARMA11:
        A = 1 + t * t + 2 * a * t
        B = (1 + a * t) * (a + t)
        d = float(_ag(a, s)[0])
        if not interp:
            return 1 + 2 * (B / A) * d / s
        r = float(one_minus_pow(a, s)) / (1 - a)
        return (2 * s * s + 1) / (3 * s) + B * (s * s - 1) * r * r / (3 * s * s * A + 6 * s * B * d)
    raise InvalidSpecError(f"unknown model {m!r}")


def arma_interpolated_vr_alt(alpha: float, theta: float, s: int) -> float:
    """Simplified interpolated ARMA(1,1) ratio with ``1 + 2*a*t + t^2`` in
    the denominator bracket instead of ``1 + a*t + t^2``.

    It does not equal long_var / (s * short_var) when ``a*t != 0``.
    Comparison use only.
    """
    s = _check_s(s)
    a = float(_check_unit("alpha", alpha))
    t = float(_check_unit("theta", theta))
    A = 1 + t * t + 2 * a * t
    B = (1 + a * t) * (a + t)
    q = float(one_minus_pow(a, s)) * (1 + 2 * a * t + t * t) + a * t * float(one_minus_pow(a, s - 2))
    return ((2 * s * s + 1) / (3 * s)
            + (s * s - 1) / (6 * s) * (a ** (s - 1) * (2 - a ** s) * B - A) / q)


def arma_vy_threshold(alpha: float, s: int) -> float:
    """First-order autocorrelation below which the original ARMA(1,1)
    variance ratio is below one."""
    s = _check_s(s)
    a = float(_check_unit("alpha", alpha))
    return (s - 1) / (s - a ** (s - 1))


def variance_shrinkage(spec: DgpSpec, s: int) -> tuple[float, float]:
    """(short_x / short_y, long_x / long_y)."""
    s = _check_spec(spec, s)
    a, t = spec.alpha, spec.theta
    s2 = s * s
    m = spec.model
    if m is Model.AR1:
        a_s = a ** s
        return (float(one_minus_pow(a, s)) / (s2 * (1 - a)),
                (s2 * (3 + a_s) + 3 - a_s) / (6 * s2))
    if m is Model.MA1:
        return (1 + t * t) / (s2 * (1 + t * t - t)), (s2 + 1) / (2 * s2)
    if m is Model.RW:
        return 1 / s, (2 * s2 + 1) / (3 * s2)
    return (short_var(spec, Variant.INTERPOLATED, s) / short_var(spec, Variant.ORIGINAL, s),
            long_var(spec, Variant.INTERPOLATED, s) / long_var(spec, Variant.ORIGINAL, s))
