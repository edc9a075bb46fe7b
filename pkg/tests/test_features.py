import numpy as np
import pytest

from tarclust.config import PipelineConfig
from tarclust.errors import FeatureExtractionError, InvalidArgumentError
from tarclust.features import BLOCKS, assemble_matrix, extract_features, standardize_rows
from tarclust.series import TimeSeries, acf
from tarclust.simlab import get_dgm, simulate

CFG = PipelineConfig(stationarize_mode="none")


@pytest.fixture(scope="module")
def noise_vec():
    x = np.random.default_rng(3).standard_normal(400)
    return extract_features(TimeSeries(x, label="wn"), CFG)


def test_dimension_arithmetic(noise_vec):
    assert noise_vec.dim == CFG.k * CFG.p_max + CFG.p_ar_max + 5 * CFG.l == CFG.feature_dim
    assert noise_vec.as_array().size == len(noise_vec.row_names())
    sizes = [getattr(noise_vec, b).size for b in BLOCKS]
    assert sizes == [9, 12, 12, 12, 12, 12, 12]


def test_noise_is_mostly_masked(noise_vec):
    assert np.count_nonzero(noise_vec.ar_coeffs) <= 2
    for b in ("resid_acf", "resid_pacf", "resid_ccf_sq"):
        assert np.count_nonzero(getattr(noise_vec, b)) <= 3


def test_masked_entries_are_exact_zero(noise_vec):
    band = acf(noise_vec.setar.residuals, CFG.l).significance_band
    r = noise_vec.resid_acf
    assert np.all((r == 0) | (np.abs(r) >= band))


def test_seasonal_peak_survives():
    v = extract_features(simulate(get_dgm("ser01"), 400, seed=1), CFG)
    assert abs(v.series_acf[11]) > 1.96 / np.sqrt(400)


def test_same_dgm_closer_than_different():
    near, far = [], []
    for s in range(30):
        a = extract_features(simulate(get_dgm("ser01"), 400, seed=3 * s), CFG).as_array()
        b = extract_features(simulate(get_dgm("ser01"), 400, seed=3 * s + 1), CFG).as_array()
        c = extract_features(simulate(get_dgm("ser06"), 400, seed=3 * s + 2), CFG).as_array()
        near.append(np.linalg.norm(a - b))
        far.append(np.linalg.norm(a - c))
    assert np.mean(near) < np.mean(far)


def test_deterministic():
    x = simulate(get_dgm("ser08"), 400, seed=9)
    np.testing.assert_array_equal(extract_features(x, CFG).as_array(), extract_features(x, CFG).as_array())


def test_stricter_level_never_adds_nonzeros():
    x = simulate(get_dgm("ser09"), 400, seed=2)
    loose = extract_features(x, CFG.replace(significance_level=0.10)).as_array()
    strict = extract_features(x, CFG.replace(significance_level=0.01)).as_array()
    coef = slice(0, CFG.k * CFG.p_max)
    masked = np.r_[np.arange(9), np.arange(9, 45), np.arange(69, 81)]
    assert np.count_nonzero(strict[masked]) <= np.count_nonzero(loose[masked])
    assert np.count_nonzero(strict[coef]) <= np.count_nonzero(loose[coef])


def test_short_series_error_carries_label():
    with pytest.raises(FeatureExtractionError) as info:
        extract_features(TimeSeries(np.arange(20.0), label="short"), CFG)
    assert info.value.label == "short"


def test_constant_series_error():
    with pytest.raises(FeatureExtractionError) as info:
        extract_features(TimeSeries(np.ones(200), label="flat"), CFG)
    assert info.value.label == "flat"


class TestAssemble:
    def test_single_vector(self, noise_vec):
        fm = assemble_matrix([noise_vec], standardize=True)
        assert fm.data.shape == (noise_vec.dim, 1)
        assert np.all(fm.data == 0)

    def test_duplicates_at_zero_distance(self, noise_vec):
        fm = assemble_matrix([noise_vec, noise_vec], standardize=False)
        assert np.linalg.norm(fm.points[0] - fm.points[1]) == 0

    def test_dimension_mismatch(self, noise_vec):
        other = extract_features(simulate(get_dgm("ser03"), 400, seed=0), CFG.replace(l=6))
        with pytest.raises(InvalidArgumentError):
            assemble_matrix([noise_vec, other])
        with pytest.raises(InvalidArgumentError):
            assemble_matrix([])

    def test_row_standardization(self, rng):
        raw = rng.standard_normal((5, 8))
        raw[2] = 3.0
        data, mean, scale = standardize_rows(raw)
        live = [0, 1, 3, 4]
        np.testing.assert_allclose(data[live].mean(axis=1), 0, atol=1e-12)
        np.testing.assert_allclose(data[live].std(axis=1), 1, atol=1e-12)
        assert np.all(data[2] == 0)
        again, _, _ = standardize_rows(data)
        assert np.max(np.abs(again - data)) <= 1e-10

    def test_between_exceeds_within(self):
        vecs, truth = [], []
        for i, name in enumerate(("ser01", "ser03", "ser06", "ser07", "ser10")):
            for s in range(4):
                vecs.append(extract_features(simulate(get_dgm(name), 400, seed=10 * i + s), CFG))
                truth.append(name)
        P = assemble_matrix(vecs, standardize=False).points
        d = np.linalg.norm(P[:, None] - P[None], axis=2)
        t = np.array(truth)
        same = (t[:, None] == t[None]) & ~np.eye(t.size, dtype=bool)
        assert d[~same & ~np.eye(t.size, dtype=bool)].mean() > d[same].mean()

    def test_csv_export(self, tmp_path, noise_vec):
        fm = assemble_matrix([noise_vec, noise_vec])
        fm.to_csv(tmp_path / "f.csv")
        lines = (tmp_path / "f.csv").read_text().splitlines()
        assert lines[0] == "feature,wn,wn"
        assert len(lines) == noise_vec.dim + 1
