"""Feature vectors built from SETAR, AR and correlation statistics of a series."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .ar import fit_ar, select_ar_order, significant_coefficients, z_value
from .errors import FeatureExtractionError, InvalidArgumentError, TarclustError
from .series import TimeSeries, acf, ccf, pacf
from .setar import SetarModel, fit_setar_grid, fit_setar_sequential

__all__ = [
    "FeatureVector",
    "FeatureMatrix",
    "extract_features",
    "assemble_matrix",
    "BLOCKS",
]

BLOCKS = ("setar_coeffs", "resid_acf", "resid_pacf", "resid_ccf_sq", "series_acf", "series_pacf", "ar_coeffs")


@dataclass(frozen=True)
class FeatureVector:
    label: Optional[str]
    setar_coeffs: np.ndarray
    resid_acf: np.ndarray
    resid_pacf: np.ndarray
    resid_ccf_sq: np.ndarray
    series_acf: np.ndarray
    series_pacf: np.ndarray
    ar_coeffs: np.ndarray
    setar: Optional[SetarModel] = None
    n_regimes: int = 1

    def as_array(self) -> np.ndarray:
        return np.concatenate([getattr(self, b) for b in BLOCKS])

    @property
    def dim(self) -> int:
        return sum(getattr(self, b).size for b in BLOCKS)

    def row_names(self) -> list[str]:
        names = []
        n_reg = self.n_regimes
        per = self.setar_coeffs.size // n_reg
        for j in range(n_reg):
            names += [f"setar_r{j + 1}_lag{i + 1}" for i in range(per)]
        for b in BLOCKS[1:-1]:
            names += [f"{b}_lag{h + 1}" for h in range(getattr(self, b).size)]
        names += [f"ar_lag{i + 1}" for i in range(self.ar_coeffs.size)]
        return names


def _pad(values: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros(width)
    out[: min(width, values.size)] = values[:width]
    return out


def _masked_regime_coeffs(model: SetarModel, z: float, p_max: int, k: int) -> np.ndarray:
    blocks = []
    for reg in model.regimes:
        keep = np.abs(reg.t_stats) >= z
        blocks.append(_pad(np.where(keep, reg.coefficients, 0.0), p_max))
    # fewer fitted regimes than slots: the last regime covers the rest
    while len(blocks) < k:
        blocks.append(blocks[-1])
    return np.concatenate(blocks)


def extract_features(series: TimeSeries, config) -> FeatureVector:
    """Feature vector of an already stationarized series.

    Blocks, in order: significance-masked SETAR coefficients (each regime
    padded to ``p_max``), masked ACF and PACF of the standardized SETAR
    residuals, masked cross-correlation of residuals with squared residuals,
    ACF and PACF of the series, and masked AR coefficients padded to
    ``p_ar_max``. Total length ``k p_max + p_ar_max + 5 l``.

    Raises
    ------
    FeatureExtractionError
        On any estimation failure; carries the series label.
    """
    label = series.label
    n = len(series)
    if n < config.min_length:
        raise FeatureExtractionError(label, f"length {n} below minimum {config.min_length}")
    z = z_value(config.significance_level)
    l = config.l
    try:
        fit = fit_setar_sequential if config.setar_method == "sequential" else fit_setar_grid
        kw = {"k_max" if config.setar_method == "sequential" else "k": config.k}
        model = fit(series, p_max=config.p_max, d_max=config.d_max, criterion=config.criterion, **kw)
        setar_block = _masked_regime_coeffs(model, z, config.p_max, config.k)

        res = model.residuals
        r_acf = acf(res, l, z).masked()
        r_pacf = pacf(res, l, z).masked()
        r_ccf = ccf(res, res**2, l, z).masked()

        s_acf = acf(series, l, z).values
        s_pacf = pacf(series, l, z).values

        p_ar = select_ar_order(series, config.p_ar_max, config.criterion)
        ar = fit_ar(series, p_ar, config.criterion)
        ar_block = _pad(significant_coefficients(ar, config.significance_level), config.p_ar_max)
    except TarclustError as exc:
        raise FeatureExtractionError(label, exc) from exc
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        raise FeatureExtractionError(label, exc) from exc

    vec = FeatureVector(
        label=label,
        setar_coeffs=setar_block,
        resid_acf=r_acf,
        resid_pacf=r_pacf,
        resid_ccf_sq=r_ccf,
        series_acf=s_acf,
        series_pacf=s_pacf,
        ar_coeffs=ar_block,
        setar=model,
        n_regimes=config.k,
    )
    if not np.all(np.isfinite(vec.as_array())):
        raise FeatureExtractionError(label, "non-finite feature value")
    return vec


@dataclass(frozen=True)
class FeatureMatrix:
    """Features in rows, one column per series, plus the row scaling used.

    ``raw`` holds the unscaled stack; ``data`` the row-standardized one
    (or ``raw`` itself when scaling is off).
    """

    raw: np.ndarray
    data: np.ndarray
    labels: tuple
    row_mean: np.ndarray
    row_scale: np.ndarray
    row_names: tuple = ()

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def points(self) -> np.ndarray:
        """One row per series, for distance computations."""
        return self.data.T

    def to_csv(self, path, scaled: bool = True) -> None:
        mat = self.data if scaled else self.raw
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["feature", *self.labels])
            names = self.row_names or tuple(f"f{i + 1}" for i in range(mat.shape[0]))
            for name, row in zip(names, mat):
                w.writerow([name, *(repr(float(v)) for v in row)])


def standardize_rows(raw: np.ndarray):
    mean = raw.mean(axis=1)
    scale = raw.std(axis=1)
    # identical entries can leave rounding-level spread
    scale = np.where(scale > 1e-12 * np.maximum(1.0, np.abs(mean)), scale, 0.0)
    safe = np.where(scale > 0, scale, 1.0)
    data = np.where(scale[:, None] > 0, (raw - mean[:, None]) / safe[:, None], 0.0)
    return data, mean, scale


def assemble_matrix(vectors: Sequence[FeatureVector], standardize: bool = True) -> FeatureMatrix:
    """Stack vectors as columns and standardize each feature row.

    Constant rows become all zeros.
    """
    if len(vectors) == 0:
        raise InvalidArgumentError("no feature vectors to assemble")
    dims = {v.dim for v in vectors}
    if len(dims) != 1:
        raise InvalidArgumentError(f"feature vectors differ in dimension: {sorted(dims)}")
    raw = np.column_stack([v.as_array() for v in vectors])
    if standardize:
        data, mean, scale = standardize_rows(raw)
    else:
        data, mean, scale = raw.copy(), np.zeros(raw.shape[0]), np.ones(raw.shape[0])
    labels = tuple(v.label if v.label is not None else f"series{i + 1}" for i, v in enumerate(vectors))
    return FeatureMatrix(raw, data, labels, mean, scale, tuple(vectors[0].row_names()))
