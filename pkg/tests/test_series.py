import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from tarclust.errors import DegenerateSeriesError, InvalidArgumentError
from tarclust.series import TimeSeries, acf, ccf, durbin_levinson, lag_matrix, pacf, significance_band, stationarize

from conftest import ar_path


class TestTimeSeries:
    def test_values_read_only_float(self):
        ts = TimeSeries([1, 2, 3], label="a")
        assert ts.values.dtype == np.float64
        with pytest.raises(ValueError):
            ts.values[0] = 5.0

    @pytest.mark.parametrize("bad", [[], [1.0, np.nan], [np.inf]])
    def test_rejects_empty_or_nonfinite(self, bad):
        with pytest.raises(InvalidArgumentError):
            TimeSeries(bad)

    def test_timestamps_checked(self):
        d = np.array(["2000-01-01", "2000-02-01"], dtype="datetime64[D]")
        assert len(TimeSeries([1.0, 2.0], timestamps=d)) == 2
        with pytest.raises(InvalidArgumentError):
            TimeSeries([1.0, 2.0], timestamps=d[::-1])
        with pytest.raises(InvalidArgumentError):
            TimeSeries([1.0, 2.0, 3.0], timestamps=d)


class TestAcf:
    def test_ar1_matches_powers(self):
        y = ar_path(0.8, 50000, seed=1)
        r = acf(y, 5)
        np.testing.assert_allclose(r.values, 0.8 ** np.arange(1, 6), atol=0.02)
        assert r.significance_band == pytest.approx(1.96 / np.sqrt(50000))

    def test_biased_estimator_by_hand(self):
        x = np.array([1.0, 3.0, 2.0, 5.0])
        d = x - x.mean()
        expected = [(d[:-h] * d[h:]).sum() / (d * d).sum() for h in (1, 2, 3)]
        np.testing.assert_allclose(acf(x, 3).values, expected, rtol=0, atol=1e-15)

    def test_white_noise_inside_wide_band(self, rng):
        x = rng.standard_normal(10000)
        assert np.all(np.abs(acf(x, 20).values) < 3 / np.sqrt(10000))

    def test_errors(self):
        with pytest.raises(InvalidArgumentError):
            acf(np.arange(5.0), 5)
        with pytest.raises(DegenerateSeriesError):
            acf(np.ones(20), 3)

    def test_masked_zeroes_small_entries(self, rng):
        r = acf(rng.standard_normal(400), 12)
        m = r.masked()
        assert np.all((m == 0) | (np.abs(m) >= r.significance_band))

    @settings(max_examples=40, deadline=None)
    @given(
        arrays(np.float64, 40, elements=st.floats(-100, 100)),
        st.floats(0.01, 50),
        st.floats(-50, 50),
    )
    def test_affine_invariance(self, x, a, b):
        if np.std(x) < 1e-3:
            return
        np.testing.assert_allclose(acf(a * x + b, 10).values, acf(x, 10).values, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(arrays(np.float64, st.integers(15, 60), elements=st.floats(-1e3, 1e3)))
    def test_bounded(self, x):
        if np.std(x) < 1e-6:
            return
        assert np.all(np.abs(acf(x, 10).values) <= 1.0)
        assert np.all(np.abs(pacf(x, 10).values) <= 1.0)


class TestPacf:
    def test_lag_one_equals_acf(self, rng):
        x = rng.standard_normal(300).cumsum()
        assert pacf(x, 6).values[0] == acf(x, 6).values[0]

    def test_durbin_levinson_ar2_oracle(self):
        # theoretical AR(2) autocorrelations: pacf is (rho1, phi2, 0, 0)
        phi1, phi2 = 0.5, 0.3
        rho1 = phi1 / (1 - phi2)
        rho = [rho1, phi1 * rho1 + phi2]
        for _ in range(2):
            rho.append(phi1 * rho[-1] + phi2 * rho[-2])
        np.testing.assert_allclose(durbin_levinson(np.array(rho)), [rho1, phi2, 0, 0], atol=1e-12)

    def test_durbin_levinson_matches_yule_walker(self, rng):
        x = rng.standard_normal(500).cumsum()
        rho = acf(x, 6).values
        r = np.concatenate([[1.0], rho])
        for k in range(1, 7):
            R = np.array([[r[abs(i - j)] for j in range(k)] for i in range(k)])
            phi = np.linalg.solve(R, r[1 : k + 1])
            assert durbin_levinson(rho)[k - 1] == pytest.approx(phi[-1], abs=1e-10)

    @pytest.mark.parametrize("phi", [[0.8], [0.5, 0.3], [0.4, -0.3, 0.25]])
    def test_cutoff_after_order(self, phi):
        y = ar_path(phi, 20000, seed=len(phi))
        r = pacf(y, 20)
        p = len(phi)
        assert abs(r.values[p - 1] - phi[-1]) < 0.03
        assert np.mean(np.abs(r.values[p:]) < r.significance_band) >= 0.9


class TestCcf:
    def test_shift_gives_one(self, rng):
        x = rng.standard_normal(500)
        y = np.concatenate([[0.0], x[:-1]])
        # y_{t+1} = x_t
        assert ccf(x, y, 3).values[0] == pytest.approx(1.0, abs=5e-3)

    def test_independent_inside_band(self, rng):
        x, y = rng.standard_normal((2, 10000))
        assert np.all(np.abs(ccf(x, y, 12).values) < 3 / np.sqrt(10000))

    def test_errors(self, rng):
        with pytest.raises(InvalidArgumentError):
            ccf(rng.standard_normal(10), rng.standard_normal(11), 2)
        with pytest.raises(DegenerateSeriesError):
            ccf(np.ones(10), rng.standard_normal(10), 2)

    def test_ar_residuals_vs_squares(self):
        from tarclust.ar import fit_ar

        m = fit_ar(ar_path(0.6, 5000, seed=3), 1)
        res = m.residuals
        r = ccf(res, res**2, 12)
        assert np.mean(np.abs(r.values) < r.significance_band) >= 0.75


class TestStationarize:
    def test_exact_logs(self):
        out = stationarize(TimeSeries([1.0, np.e, np.e**2]), "log_diff")
        np.testing.assert_allclose(out.values, [1.0, 1.0])

    def test_constant_gives_zeros(self):
        assert np.all(stationarize(TimeSeries([4.0] * 6), "log_diff").values == 0)

    def test_modes_and_timestamps(self):
        d = np.arange(np.datetime64("2000-01"), np.datetime64("2000-05")).astype("datetime64[D]")
        ts = TimeSeries([1.0, 2.0, 4.0, 8.0], timestamps=d)
        out = stationarize(ts, "diff")
        np.testing.assert_array_equal(out.values, [1.0, 2.0, 4.0])
        np.testing.assert_array_equal(out.timestamps, d[1:])
        assert stationarize(ts, "none") is ts

    def test_log_diff_rejects_nonpositive(self):
        with pytest.raises(InvalidArgumentError):
            stationarize(TimeSeries([1.0, 0.0, 2.0]), "log_diff")

    def test_random_walk_difference_is_white(self, rng):
        rw = TimeSeries(rng.standard_normal(5000).cumsum())
        r = acf(stationarize(rw, "diff"), 10)
        assert np.all(np.abs(r.values) < 4 / np.sqrt(5000))

    @settings(max_examples=30, deadline=None)
    @given(arrays(np.float64, st.integers(2, 50), elements=st.floats(0.01, 1e4)))
    def test_log_diff_round_trip(self, x):
        out = stationarize(TimeSeries(x), "log_diff").values
        back = x[0] * np.exp(np.concatenate([[0.0], np.cumsum(out)]))
        np.testing.assert_allclose(back, x, rtol=1e-9)


def test_significance_band():
    assert significance_band(400) == pytest.approx(0.098)


def test_lag_matrix_layout():
    y, X = lag_matrix(np.arange(6.0), 2)
    np.testing.assert_array_equal(y, [2, 3, 4, 5])
    np.testing.assert_array_equal(X, [[1, 1, 0], [1, 2, 1], [1, 3, 2], [1, 4, 3]])
