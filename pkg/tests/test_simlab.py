import numpy as np
import pytest

from tarclust.errors import InvalidArgumentError
from tarclust.series import acf
from tarclust.simlab import (
    DGMS,
    REFERENCE_DGMS,
    DgmSpec,
    adjusted_rand,
    confusion_matrix,
    exact_grouping,
    generate,
    get_dgm,
    run_scenario,
    simulate,
)


def arma_acf(ar, ma, lags, terms=5000):
    """Autocorrelations from the truncated MA(infinity) weights."""
    psi = np.zeros(terms)
    psi[0] = 1.0
    for j in range(1, terms):
        v = ma.get(j, 0.0)
        for i, a in ar.items():
            if j - i >= 0:
                v += a * psi[j - i]
        psi[j] = v
    g0 = psi @ psi
    return np.array([psi[:-h] @ psi[h:] / g0 for h in lags])


def test_table_coefficients():
    assert get_dgm("ser01").ar == {12: 0.80} and get_dgm("ser01").ma == {12: 0.70}
    assert get_dgm("ser05").ar == {1: 1.10, 2: -0.60, 3: -0.20}
    s10 = get_dgm("ser10")
    assert s10.thresholds == (3.0, 9.0) and s10.regimes[1] == (6.0, {1: 0.90})
    assert len(REFERENCE_DGMS) == 10 and all(n in DGMS for n in REFERENCE_DGMS)


def test_seasonal_skeleton():
    spec = get_dgm("ser01")
    init = np.arange(1.0, 13.0)
    y = generate(spec, np.zeros(24), initial=init)
    np.testing.assert_allclose(y[:12], 0.8 * init)
    np.testing.assert_allclose(y[12:], 0.64 * init)


def test_ser03_acf_matches_analytic():
    spec = get_dgm("ser03")
    y = simulate(spec, 50000, seed=3)
    np.testing.assert_allclose(acf(y, 5).values, arma_acf(spec.ar, spec.ma, range(1, 6)), atol=0.02)


def test_ser07_regimes_visited():
    y = simulate(get_dgm("ser07"), 10000, seed=1).values
    z = y[:-1]
    low, high = z <= -1, z > 1
    assert low.mean() > 0 and high.mean() > 0
    assert abs(y[1:][low].mean() - y[1:][high].mean()) > 0.1


def test_setar_recursion_by_hand():
    spec = get_dgm("ser07")
    e = np.array([0.5, -2.0, 0.1, 3.0])
    y = generate(spec, e)
    hist = [0.0, 0.0]
    for t, v in enumerate(e):
        z = hist[-1]
        c, a = spec.regimes[0 if z <= -1 else (1 if z <= 1 else 2)]
        nxt = c + a[1] * hist[-1] + a[2] * hist[-2] + v
        assert y[t] == pytest.approx(nxt)
        hist.append(nxt)


def test_deterministic_and_seed_sensitive():
    a = simulate(get_dgm("ser04"), 50, seed=1).values
    b = simulate(get_dgm("ser04"), 50, seed=1).values
    c = simulate(get_dgm("ser04"), 50, seed=2).values
    np.testing.assert_array_equal(a, b)
    assert np.all(a[:10] != c[:10])


def test_stationary_specs_bounded_and_ser06_grows():
    for name in ("ser01", "ser02", "ser03", "ser04", "ser05", "ser07", "ser08", "ser09"):
        for s in range(5):
            assert np.max(np.abs(simulate(get_dgm(name), 5000, seed=s).values)) < 1e3
    short = np.var(simulate(get_dgm("ser06"), 200, seed=0).values)
    long = np.var(simulate(get_dgm("ser06"), 5000, seed=0).values)
    assert long > short


def test_spec_validation():
    with pytest.raises(InvalidArgumentError, match="valid kinds"):
        DgmSpec("x", "garch")
    with pytest.raises(InvalidArgumentError):
        DgmSpec("x", "arma", ar={0: 0.5})
    with pytest.raises(InvalidArgumentError):
        DgmSpec("x", "setar3", regimes=((0, {1: 0.1}), (0, {1: 0.2})), thresholds=(1.0, 0.0))
    with pytest.raises(InvalidArgumentError, match="ser01"):
        get_dgm("ser99")
    with pytest.raises(InvalidArgumentError):
        simulate(get_dgm("ser02"), 10, burn_in=5)


class TestExactGrouping:
    def test_relabel_invariance(self, rng):
        truth = np.repeat(np.arange(5), 4)
        for _ in range(10):
            perm = rng.permutation(5)
            assert exact_grouping(truth, perm[truth]) == 100.0
            assert adjusted_rand(truth, perm[truth]) == pytest.approx(1.0)

    def test_half_swapped(self):
        truth = [0, 0, 0, 0, 1, 1, 1, 1]
        got = [0, 0, 1, 1, 1, 1, 0, 0]
        assert exact_grouping(truth, got) == 50.0

    def test_random_baseline(self, rng):
        truth = np.repeat(np.arange(10), 10)
        vals = [exact_grouping(truth, rng.integers(0, 10, 100)) for _ in range(50)]
        # optimal matching lifts chance agreement above 1/c
        assert 10 <= np.mean(vals) <= 30

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            exact_grouping([0, 1], [0])
        with pytest.raises(InvalidArgumentError):
            confusion_matrix([0, 1], [0])


class TestScenario:
    def test_zero_replicates(self):
        assert run_scenario(5, 400, 0) == []

    def test_two_distinct_dgms(self):
        (r,) = run_scenario(5, 400, 1, dgms=("white_noise", "ser01"), seed=4)
        assert r.exact_grouping_pct == 100.0 and r.chosen_c == 2
        assert r.error is None and len(r.labels) == 10
        d = r.to_dict()
        assert d["chosen_c"] == 2 and d["adjusted_rand"] == pytest.approx(1.0)

    def test_parallel_matches_serial(self):
        kw = dict(dgms=("white_noise", "ser01", "ser07"), seed=2)
        a = run_scenario(3, 300, 2, **kw)
        b = run_scenario(3, 300, 2, n_jobs=2, **kw)
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
