import numpy as np
import pytest

from tarclust.config import PipelineConfig
from tarclust.errors import InvalidArgumentError
from tarclust.pipeline import TooFewSeriesError, cluster_series
from tarclust.series import TimeSeries
from tarclust.simlab import get_dgm, simulate

CFG = PipelineConfig(stationarize_mode="none")


def test_failures_recorded_and_rest_clustered():
    series = [simulate(get_dgm(n), 300, seed=i, label=f"{n}_{i}") for i, n in enumerate(["ser01"] * 3 + ["ser07"] * 3)]
    series.append(TimeSeries(np.ones(300), label="flat"))
    run = cluster_series(series, CFG)
    assert "flat" in run.failures and "flat" not in run.labels
    assert len(run.labels) == 6 and run.result.c == 2
    first = run.result.assignments[:3]
    assert len(set(first)) == 1 and first[0] not in run.result.assignments[3:]


def test_too_few():
    with pytest.raises(TooFewSeriesError):
        cluster_series([TimeSeries(np.ones(100), label="a"), simulate(get_dgm("ser03"), 100, seed=0, label="b")], CFG)


def test_unique_labels():
    s = simulate(get_dgm("ser03"), 100, seed=0, label="x")
    with pytest.raises(InvalidArgumentError):
        cluster_series([s, s], CFG)
