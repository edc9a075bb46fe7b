"""End-to-end clustering of a set of series, whole-sample or per time window."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import PipelineConfig, RollingWindow
from .errors import InvalidArgumentError, TarclustError
from .features import FeatureMatrix, FeatureVector, assemble_matrix, extract_features
from .series import TimeSeries, stationarize
from .setar import hansen_test
from .spectral import ClusteringResult, select_cluster_count

log = logging.getLogger(__name__)

__all__ = [
    "ClusterRun",
    "TooFewSeriesError",
    "cluster_series",
    "cluster_vectors",
    "hansen_pvalues",
    "WindowSpec",
    "make_windows",
    "slice_window",
]


class TooFewSeriesError(TarclustError):
    """Fewer than two series survived feature extraction."""


@dataclass
class ClusterRun:
    labels: list
    features: FeatureMatrix
    vectors: list
    result: ClusteringResult
    failures: dict = field(default_factory=dict)


def prepare(series: Sequence[TimeSeries], config: PipelineConfig):
    """Stationarize and extract features; failures are collected per label."""
    vectors, failures = [], {}
    for s in series:
        try:
            st = stationarize(s, config.stationarize_mode)
            vectors.append(extract_features(st, config))
        except TarclustError as exc:
            reason = getattr(exc, "reason", str(exc))
            failures[s.label] = reason
            log.warning("series %s dropped: %s", s.label, reason)
    return vectors, failures


def cluster_vectors(vectors: Sequence[FeatureVector], config: PipelineConfig, fixed_c: Optional[int] = None):
    fm = assemble_matrix(vectors, standardize=config.standardize_rows)
    n = fm.n
    if fixed_c is not None:
        c_range = (fixed_c, fixed_c)
    else:
        c_min, c_max = config.c_range
        c_max = min(c_max, max(2, n - 1))
        c_min = min(c_min, c_max)
        c_range = (c_min, c_max)
    return fm, select_cluster_count(fm, c_range, config)


def cluster_series(
    series: Sequence[TimeSeries], config: PipelineConfig, fixed_c: Optional[int] = None
) -> ClusterRun:
    """Stationarize, extract features and cluster with the silhouette-chosen count.

    Raises
    ------
    TooFewSeriesError
        When fewer than two series yield feature vectors.
    """
    labels = [s.label for s in series]
    if len(set(labels)) != len(labels):
        raise InvalidArgumentError("series labels must be unique")
    vectors, failures = prepare(series, config)
    if len(vectors) < 2:
        raise TooFewSeriesError(f"only {len(vectors)} series survived feature extraction")
    fm, result = cluster_vectors(vectors, config, fixed_c)
    return ClusterRun([v.label for v in vectors], fm, vectors, result, failures)


def hansen_pvalues(series: Sequence[TimeSeries], config: PipelineConfig, pairs=((1, 2),)) -> dict:
    """Threshold-test p-values per stationarized series; errors reported as strings."""
    out = {}
    for s in series:
        row = {}
        for null_k, alt_k in pairs:
            key = f"TAR({null_k}) vs TAR({alt_k})"
            try:
                st = stationarize(s, config.stationarize_mode)
                r = hansen_test(
                    st,
                    null_k,
                    alt_k,
                    config.bootstrap_reps,
                    config.seed,
                    p_max=config.p_max,
                    d_max=config.d_max,
                    criterion=config.criterion,
                )
                row[key] = r.p_value
            except TarclustError as exc:
                row[key] = f"error: {exc}"
        out[s.label] = row
    return out


@dataclass(frozen=True)
class WindowSpec:
    name: str
    start: np.datetime64
    end: np.datetime64


def make_windows(timestamps: np.ndarray, window) -> list[WindowSpec]:
    """Windows for a date axis: explicit periods, rolling windows, or the whole span."""
    ts = np.asarray(timestamps, dtype="datetime64[D]")
    if window is None:
        return [WindowSpec("all", ts[0], ts[-1])]
    if isinstance(window, RollingWindow):
        out = []
        for s in range(0, ts.size - window.length + 1, window.step):
            a, b = ts[s], ts[s + window.length - 1]
            out.append(WindowSpec(f"{a}..{b}", a, b))
        return out
    return [
        WindowSpec(p.title, np.datetime64(p.start, "D"), np.datetime64(p.end, "D"))
        for p in window
    ]


def slice_window(series: TimeSeries, w: WindowSpec) -> TimeSeries:
    if series.timestamps is None:
        raise InvalidArgumentError("windowed clustering needs timestamps")
    keep = (series.timestamps >= w.start) & (series.timestamps <= w.end)
    return TimeSeries(series.values[keep], label=series.label, timestamps=series.timestamps[keep])
