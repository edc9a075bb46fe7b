import numpy as np
import pytest

from tarclust.ar import (
    fit_ar,
    information_criterion,
    select_ar_order,
    significant_coefficients,
    z_value,
)
from tarclust.errors import EstimationError, InvalidArgumentError

from conftest import ar_path


def test_ar1_coefficient_recovered():
    m = fit_ar(ar_path(0.8, 5000, seed=11), 1)
    assert abs(m.coefficients[0] - 0.8) < 0.03
    assert m.residuals.size == 5000 - 1
    assert m.sigma2 > 0 and np.all(m.std_errors > 0)
    assert m.std_errors.size == 2


def test_noiseless_recursion_exact():
    x = 3.0 * 0.5 ** np.arange(40)
    m = fit_ar(x, 1)
    assert m.coefficients[0] == pytest.approx(0.5, abs=1e-8)
    assert m.intercept == pytest.approx(0.0, abs=1e-8)


def test_matches_normal_equations(rng):
    x = ar_path([0.5, -0.2], 300, seed=4)
    m = fit_ar(x, 2)
    y = x[2:]
    X = np.column_stack([np.ones(298), x[1:-1], x[:-2]])
    beta = np.linalg.solve(X.T @ X, X.T @ y)
    np.testing.assert_allclose([m.intercept, *m.coefficients], beta, atol=1e-10)
    s2 = np.sum((y - X @ beta) ** 2) / (298 - 3)
    np.testing.assert_allclose(m.std_errors, np.sqrt(s2 * np.diag(np.linalg.inv(X.T @ X))), rtol=1e-8)


def test_residuals_orthogonal_to_lags():
    x = ar_path([0.6, 0.2], 1000, seed=5)
    m = fit_ar(x, 2)
    for lag in (1, 2):
        col = x[2 - lag : x.size - lag]
        col = col - col.mean()
        assert abs(col @ m.residuals) < 1e-6 * x.size


def test_fit_is_deterministic():
    x = ar_path([0.4, 0.3], 500, seed=6)
    m = fit_ar(x, 2)
    m2 = fit_ar(x, 2)
    np.testing.assert_array_equal(m.coefficients, m2.coefficients)


def test_white_noise_mostly_insignificant(rng):
    hits = 0
    for i in range(40):
        m = fit_ar(rng.standard_normal(400), 3)
        hits += np.all(np.abs(m.t_stats) < 1.96)
    assert hits / 40 >= 0.7


def test_constant_series_fails():
    with pytest.raises(EstimationError):
        fit_ar(np.ones(50), 2)


def test_too_short():
    with pytest.raises(InvalidArgumentError):
        fit_ar(np.arange(4.0), 2)


def test_bic_selects_ar2():
    hits = sum(select_ar_order(ar_path([0.5, 0.3], 2000, seed=s), 8, "bic") == 2 for s in range(30))
    assert hits >= 27


def test_white_noise_prefers_small_order(rng):
    picks = [select_ar_order(rng.standard_normal(500), 6, "bic") for _ in range(30)]
    assert np.mean(np.array(picks) == 1) > 0.5


def test_single_candidate(rng):
    assert select_ar_order(rng.standard_normal(50), 1) == 1


def test_information_criteria_values():
    n, rss, k = 100, 50.0, 3
    base = n * np.log(rss / n)
    assert information_criterion(rss, n, k, "aic") == pytest.approx(base + 2 * k)
    assert information_criterion(rss, n, k, "bic") == pytest.approx(base + np.log(n) * k)
    assert information_criterion(rss, n, k, "hqic") == pytest.approx(base + 2 * np.log(np.log(n)) * k)
    with pytest.raises(InvalidArgumentError):
        information_criterion(rss, n, k, "fpe")


def test_masking():
    m = fit_ar(ar_path(0.8, 5000, seed=12), 3)
    out = significant_coefficients(m)
    assert out.size == 3 and out[0] == m.coefficients[0]
    assert np.all(significant_coefficients(m, 1e-300) == 0)
    np.testing.assert_array_equal(significant_coefficients(m, 0.999999), m.coefficients)
    assert z_value(0.05) == pytest.approx(1.959964, abs=1e-6)
