"""Least-squares autoregressions, information-criterion order selection and masking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.stats import norm

from .errors import EstimationError, InvalidArgumentError
from .series import TimeSeries, lag_matrix

__all__ = [
    "ArModel",
    "fit_ar",
    "select_ar_order",
    "significant_coefficients",
    "information_criterion",
    "ols",
]

Criterion = Literal["aic", "bic", "hqic"]


def penalty(criterion: str, n: int) -> float:
    """Per-parameter penalty of an information criterion on ``n`` observations."""
    if criterion == "aic":
        return 2.0
    if criterion == "bic":
        return float(np.log(n))
    if criterion == "hqic":
        return float(2.0 * np.log(np.log(n)))
    raise InvalidArgumentError(f"unknown criterion {criterion!r}")


def information_criterion(rss, n: int, n_params, criterion: str):
    """``n log(rss/n) + penalty * n_params``; works elementwise on arrays."""
    rss = np.maximum(np.asarray(rss, dtype=float), np.finfo(float).tiny * n)
    return n * np.log(rss / n) + penalty(criterion, n) * np.asarray(n_params)


@dataclass(frozen=True)
class ArModel:
    intercept: float
    coefficients: np.ndarray
    std_errors: np.ndarray  # intercept first, then one per lag
    residuals: np.ndarray
    sigma2: float
    ic: dict

    @property
    def order(self) -> int:
        return self.coefficients.size

    @property
    def rss(self) -> float:
        return float(self.residuals @ self.residuals)

    @property
    def t_stats(self) -> np.ndarray:
        return self.coefficients / self.std_errors[1:]


def ols(y: np.ndarray, X: np.ndarray):
    """OLS estimate, residuals, residual variance and coefficient standard errors."""
    n, q = X.shape
    if n <= q:
        raise EstimationError(f"{n} observations cannot identify {q} parameters")
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < q:
        raise EstimationError("singular design matrix")
    resid = y - X @ beta
    sigma2 = float(resid @ resid) / (n - q)
    xtx_inv = np.linalg.inv(X.T @ X)
    se = np.sqrt(np.maximum(sigma2 * np.diag(xtx_inv), 0.0))
    # exact fits give zero variance; keep standard errors strictly positive
    se = np.maximum(se, np.finfo(float).tiny)
    return beta, resid, sigma2, se


def fit_ar(series, p: int, criterion: Criterion = "bic") -> ArModel:
    """Fit an AR(p) with intercept by OLS on the lag-design matrix.

    Uses observations ``p..T-1`` as responses, so the residual series has
    length ``T - p``.
    """
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, float)
    if p < 1:
        raise InvalidArgumentError("AR order must be positive")
    if x.size <= p + 2:
        raise InvalidArgumentError(f"series of length {x.size} too short for AR({p})")
    y, X = lag_matrix(x, p)
    beta, resid, sigma2, se = ols(y, X)
    n = y.size
    ic_value = float(information_criterion(resid @ resid, n, p + 1, criterion))
    return ArModel(
        intercept=float(beta[0]),
        coefficients=beta[1:],
        std_errors=se,
        residuals=resid,
        sigma2=sigma2,
        ic={"name": criterion, "value": ic_value},
    )


def select_ar_order(series, p_max: int, criterion: Criterion = "bic") -> int:
    """Order in ``1..p_max`` minimizing the criterion on a common sample.

    Every candidate drops the first ``p_max`` observations so the criteria
    are computed on the same responses.
    """
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, float)
    if p_max < 1:
        raise InvalidArgumentError("p_max must be positive")
    if x.size <= p_max + 2:
        raise InvalidArgumentError(f"series of length {x.size} too short for p_max={p_max}")
    y, X = lag_matrix(x, p_max)
    n = y.size
    best, best_ic = 1, np.inf
    for p in range(1, p_max + 1):
        _, resid, _, _ = ols(y, X[:, : p + 1])
        ic = information_criterion(resid @ resid, n, p + 1, criterion)
        if ic < best_ic:
            best, best_ic = p, ic
    return best


def z_value(level: float) -> float:
    if not 0 < level < 1:
        raise InvalidArgumentError(f"significance level must lie in (0, 1), got {level}")
    return float(norm.ppf(1.0 - level / 2.0))


def significant_coefficients(model: ArModel, level: float = 0.05) -> np.ndarray:
    """Coefficients with entries whose |t| falls below the two-sided cutoff set to 0."""
    keep = np.abs(model.t_stats) >= z_value(level)
    return np.where(keep, model.coefficients, 0.0)
