import math

import numpy as np
import pytest

from interpvr.dgp import (
    DgpSpec,
    Model,
    SegmentedSeries,
    benchmarks,
    default_burn_in,
    innovations,
    replication_seed,
    simulate,
)
from interpvr.errors import InsufficientDataError, InvalidSpecError
from interpvr.interp import interpolate


class TestDgpSpec:
    @pytest.mark.parametrize("kw", [
        dict(model="ar1", alpha=1.0),
        dict(model="ar1", alpha=-1.0),
        dict(model="arma11", alpha=0.5, theta=1.0),
        dict(model="ma1", theta=-1.2),
        dict(model="rw-arma11", alpha=0.999999999999, theta=1.0),
        dict(model="rw", sigma2=-1.0),
        dict(model="ar1", alpha=0.2, mu=1.0),
        dict(model="ma1", alpha=0.3),
        dict(model="rw", theta=0.3),
        dict(model="ar1", theta=0.3),
        dict(model="ar1", alpha=float("nan")),
    ])
    def test_domain_violations(self, kw):
        with pytest.raises(InvalidSpecError):
            DgpSpec(**kw)

    def test_model_coercion(self):
        spec = DgpSpec("rw-arma11", 0.5, 0.5, 1.0, 2.0)
        assert spec.model is Model.RW_ARMA11
        assert spec.scaled(3.0).sigma2 == 6.0

    def test_zero_variance_allowed_for_simulation(self):
        assert DgpSpec("rw", mu=1.0, sigma2=0.0).sigma2 == 0.0


class TestSegmentedSeries:
    def test_length_multiple(self):
        with pytest.raises(ValueError):
            SegmentedSeries(np.arange(7.0), 4)

    def test_indices(self):
        ser = SegmentedSeries(np.arange(8.0), 4, origin_segment=3)
        assert ser.n_segments == 2
        assert list(ser.segment_index()) == [3, 3, 3, 3, 4, 4, 4, 4]
        assert list(ser.phase_index()) == [1, 2, 3, 4, 1, 2, 3, 4]
        assert ser.as_matrix().shape == (2, 4)

    def test_immutable(self):
        ser = SegmentedSeries(np.arange(4.0), 2)
        with pytest.raises(ValueError):
            ser.values[0] = 1.0


class TestSimulate:
    def test_drift_line(self):
        ser = simulate(DgpSpec("rw", mu=1.0, sigma2=0.0), 4, 2, seed=123)
        np.testing.assert_array_equal(ser.values, np.arange(1.0, 9.0))
        assert ser.s == 4 and ser.origin_segment == 1

    def test_drift_line_differences(self):
        ser = simulate(DgpSpec("rw", mu=0.37, sigma2=0.0), 3, 50, seed=1)
        d = np.diff(np.concatenate([[0.0], ser.values]))
        np.testing.assert_allclose(d, 0.37, rtol=0, atol=1e-12)

    def test_ar1_white_noise_is_raw_stream(self):
        spec = DgpSpec("ar1", alpha=0.0, sigma2=1.0)
        out = simulate(spec, 4, 25, seed=99, burn_in=0)
        np.testing.assert_array_equal(out.values, innovations(99, 100, 1.0))
        burn = default_burn_in(spec)
        out = simulate(spec, 4, 25, seed=99)
        np.testing.assert_array_equal(out.values, innovations(99, 100 + burn, 1.0)[burn:])

    def test_length_and_determinism(self):
        spec = DgpSpec("rw-arma11", 0.5, -0.3, 0.2, 1.5)
        a = simulate(spec, 5, 40, seed=2024)
        b = simulate(spec, 5, 40, seed=2024)
        c = simulate(spec, 5, 40, seed=2025)
        assert len(a) == 200
        assert a.values.tobytes() == b.values.tobytes()
        assert not np.array_equal(a.values, c.values)

    def test_ma1_recursion(self):
        spec = DgpSpec("ma1", theta=0.4, sigma2=2.0)
        out = simulate(spec, 2, 10, seed=5)
        e = innovations(5, 21, 2.0)
        np.testing.assert_allclose(out.values, e[1:] + 0.4 * e[:-1], rtol=1e-15)

    def test_arma_recursion(self):
        spec = DgpSpec("arma11", 0.6, 0.3)
        out = simulate(spec, 2, 10, seed=8, burn_in=0)
        e = innovations(8, 21, 1.0)
        y = np.zeros(21)
        for T in range(1, 21):
            y[T] = 0.6 * y[T - 1] + e[T] + 0.3 * e[T - 1]
        np.testing.assert_allclose(out.values, y[1:], rtol=1e-14)

    def test_rw_arma_level_starts_at_zero(self):
        spec = DgpSpec("rw-arma11", 0.5, 0.5, mu=0.0)
        lvl = simulate(spec, 2, 50, seed=3).values
        err = simulate(DgpSpec("arma11", 0.5, 0.5), 2, 50, seed=3).values
        np.testing.assert_allclose(lvl, np.cumsum(err), rtol=1e-12)

    def test_errors(self):
        with pytest.raises(InsufficientDataError):
            simulate(DgpSpec("rw"), 4, 1, seed=0)
        with pytest.raises(InvalidSpecError):
            simulate(DgpSpec("rw"), 4, 5, seed=0, burn_in=-1)

    def test_default_burn_in(self):
        assert default_burn_in(DgpSpec("ar1", alpha=0.5)) == 200
        assert default_burn_in(DgpSpec("arma11", alpha=-0.95, theta=0.1)) == 400
        assert default_burn_in(DgpSpec("rw-arma11", alpha=0.99)) == 2000
        assert default_burn_in(DgpSpec("rw")) == 0

    @pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 0.5, 0.9])
    def test_ar1_stationary_variance(self, alpha):
        ser = simulate(DgpSpec("ar1", alpha=alpha, sigma2=1.3), 4, 250_000, seed=17)
        target = 1.3 / (1 - alpha ** 2)
        assert abs(ser.values.var() / target - 1) < 0.02

    def test_arma_lag1_autocorrelation(self):
        ser = simulate(DgpSpec("arma11", 0.5, 0.5), 1, 100_000, seed=4)
        y = ser.values - ser.values.mean()
        r1 = np.dot(y[1:], y[:-1]) / np.dot(y, y)
        assert abs(r1 - 0.7142857142857143) < 0.01


class TestBenchmarks:
    def test_direct(self):
        assert list(benchmarks(SegmentedSeries(np.arange(1.0, 9.0), 4))) == [4.0, 8.0]

    def test_s1_identity(self):
        v = np.array([3.0, 1.0, 4.0])
        np.testing.assert_array_equal(benchmarks(SegmentedSeries(v, 1)), v)

    def test_drift(self):
        ser = simulate(DgpSpec("rw", mu=1.0, sigma2=0.0), 2, 3, seed=0)
        assert list(benchmarks(ser)) == [2.0, 4.0, 6.0]

    def test_round_trip_with_interpolation(self):
        ser = simulate(DgpSpec("ar1", alpha=0.7), 6, 30, seed=12)
        b = benchmarks(ser)
        np.testing.assert_array_equal(benchmarks(interpolate(b, 6)), b[1:])


def test_replication_seed_stable():
    assert replication_seed(1, 0) == replication_seed(1, 0)
    seeds = {replication_seed(1, r) for r in range(1000)}
    assert len(seeds) == 1000
    assert replication_seed(1, 0) != replication_seed(2, 0)
    assert 0 <= replication_seed(7, 3) < 2 ** 64
    # frozen value guards against accidental changes to the mixing function
    assert replication_seed(1, 0) == int(
        np.random.SeedSequence(1, spawn_key=(0,)).generate_state(1, np.uint64)[0])


def test_innovation_scale():
    e = innovations(0, 200_000, 4.0)
    assert math.isclose(e.std(), 2.0, rel_tol=0.01)
