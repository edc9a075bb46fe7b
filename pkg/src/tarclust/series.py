"""Time-series container, stationarizing transforms and serial-correlation statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import DegenerateSeriesError, InvalidArgumentError

__all__ = [
    "TimeSeries",
    "CorrelationSequence",
    "acf",
    "pacf",
    "ccf",
    "stationarize",
    "significance_band",
]

StationarizeMode = Literal["log_diff", "diff", "none"]


@dataclass(frozen=True)
class TimeSeries:
    """Ordered finite observations with an optional label and date axis.

    ``values`` is stored as a read-only float64 array. ``timestamps``, when
    given, must be strictly increasing and of the same length.
    """

    values: np.ndarray
    label: Optional[str] = None
    timestamps: Optional[np.ndarray] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        if values.size < 1:
            raise InvalidArgumentError("a time series needs at least one value")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise InvalidArgumentError(
                f"series {self.label!r} has a non-finite value at position {bad}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

        if self.timestamps is not None:
            ts = np.asarray(self.timestamps, dtype="datetime64[D]").ravel()
            if ts.size != values.size:
                raise InvalidArgumentError(
                    f"timestamps length {ts.size} != values length {values.size}"
                )
            if ts.size > 1 and not np.all(ts[1:] > ts[:-1]):
                raise InvalidArgumentError("timestamps must be strictly increasing")
            ts.setflags(write=False)
            object.__setattr__(self, "timestamps", ts)

    def __len__(self) -> int:
        return self.values.size

    def with_values(self, values, timestamps=None) -> "TimeSeries":
        return TimeSeries(values, label=self.label, timestamps=timestamps)


@dataclass(frozen=True)
class CorrelationSequence:
    """Correlations at lags ``1..l`` (lag 0 is never stored)."""

    lags: np.ndarray
    values: np.ndarray
    significance_band: float
    kind: Literal["acf", "pacf", "ccf"]

    def significant(self) -> np.ndarray:
        """Boolean mask of entries outside the significance band."""
        return np.abs(self.values) >= self.significance_band

    def masked(self) -> np.ndarray:
        """Values with entries inside the band set to exactly zero."""
        return np.where(self.significant(), self.values, 0.0)


def significance_band(n: int, z: float = 1.96) -> float:
    return z / np.sqrt(n)


def _as_array(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64).ravel()


def _label(series) -> Optional[str]:
    return series.label if isinstance(series, TimeSeries) else None


def _check_lag(max_lag: int, n: int) -> None:
    if int(max_lag) != max_lag or max_lag < 1:
        raise InvalidArgumentError(f"max_lag must be a positive integer, got {max_lag!r}")
    if max_lag >= n:
        raise InvalidArgumentError(f"max_lag={max_lag} must be smaller than the length {n}")


def _autocovariance(x: np.ndarray, max_lag: int) -> np.ndarray:
    # biased estimator: every lag divides by T
    xc = x - x.mean()
    n = xc.size
    return np.array([xc[: n - h] @ xc[h:] for h in range(max_lag + 1)]) / n


def acf(series, max_lag: int, z: float = 1.96) -> CorrelationSequence:
    """Sample autocorrelation at lags 1..max_lag.

    Raises
    ------
    InvalidArgumentError
        If ``max_lag`` is not below the series length.
    DegenerateSeriesError
        If the series has zero variance.
    """
    x = _as_array(series)
    _check_lag(max_lag, x.size)
    gamma = _autocovariance(x, max_lag)
    if not gamma[0] > 0:
        raise DegenerateSeriesError(f"series {_label(series)!r} is constant")
    rho = np.clip(gamma[1:] / gamma[0], -1.0, 1.0)
    return CorrelationSequence(
        lags=np.arange(1, max_lag + 1),
        values=rho,
        significance_band=significance_band(x.size, z),
        kind="acf",
    )


def durbin_levinson(rho: np.ndarray) -> np.ndarray:
    """Partial autocorrelations from autocorrelations ``rho[1..m]``.

    ``rho`` excludes lag 0. Returns an array of the same length whose first
    entry equals ``rho[0]`` exactly.
    """
    m = rho.size
    out = np.empty(m)
    phi = np.zeros(m)
    v = 1.0
    for k in range(m):
        if k == 0:
            a = rho[0]
        else:
            num = rho[k] - phi[:k] @ rho[k - 1 :: -1][:k]
            a = num / v if v > 0 else 0.0
        a = min(1.0, max(-1.0, a))
        prev = phi[:k].copy()
        phi[:k] = prev - a * prev[::-1]
        phi[k] = a
        v *= 1.0 - a * a
        out[k] = a
    return out


def pacf(series, max_lag: int, z: float = 1.96) -> CorrelationSequence:
    """Sample partial autocorrelation by Durbin-Levinson on the sample ACF."""
    r = acf(series, max_lag, z)
    return CorrelationSequence(
        lags=r.lags,
        values=durbin_levinson(r.values),
        significance_band=r.significance_band,
        kind="pacf",
    )


def ccf(x, y, max_lag: int, z: float = 1.96) -> CorrelationSequence:
    """One-sided sample cross-correlation of ``x_t`` with ``y_{t+h}``, h = 1..max_lag."""
    xa, ya = _as_array(x), _as_array(y)
    if xa.size != ya.size:
        raise InvalidArgumentError(f"length mismatch: {xa.size} vs {ya.size}")
    n = xa.size
    _check_lag(max_lag, n)
    xc, yc = xa - xa.mean(), ya - ya.mean()
    sx, sy = np.sqrt(xc @ xc / n), np.sqrt(yc @ yc / n)
    if not (sx > 0 and sy > 0):
        raise DegenerateSeriesError("cross-correlation input has zero variance")
    vals = np.array([xc[: n - h] @ yc[h:] for h in range(1, max_lag + 1)]) / (n * sx * sy)
    return CorrelationSequence(
        lags=np.arange(1, max_lag + 1),
        values=np.clip(vals, -1.0, 1.0),
        significance_band=significance_band(n, z),
        kind="ccf",
    )


def stationarize(series: TimeSeries, mode: StationarizeMode = "log_diff") -> TimeSeries:
    """Apply ``log_diff``, ``diff`` or ``none``.

    Differenced series drop the first observation and its timestamp.
    """
    if mode == "none":
        return series
    x = series.values
    if mode == "log_diff":
        if np.any(x <= 0):
            raise InvalidArgumentError(
                f"log_diff needs strictly positive values (series {series.label!r})"
            )
        out = np.diff(np.log(x))
    elif mode == "diff":
        out = np.diff(x)
    else:
        raise InvalidArgumentError(f"unknown stationarize mode {mode!r}")
    if out.size < 1:
        raise InvalidArgumentError("differencing needs at least two observations")
    ts = None if series.timestamps is None else series.timestamps[1:]
    return series.with_values(out, timestamps=ts)


def lag_matrix(x: np.ndarray, p: int, start: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Response and ``[1, x_{t-1}, ..., x_{t-p}]`` design for t = start..T-1."""
    start = p if start is None else start
    n = x.size - start
    cols = [np.ones(n)] + [x[start - i : x.size - i] for i in range(1, p + 1)]
    return x[start:], np.column_stack(cols)
