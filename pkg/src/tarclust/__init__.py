"""Clustering univariate time series by the similarity of their generating mechanisms."""

from .ar import ArModel, fit_ar, select_ar_order
from .config import PipelineConfig, load_config
from .errors import (
    ConfigError,
    DegenerateInputError,
    DegenerateSeriesError,
    EstimationError,
    FeatureExtractionError,
    GenerationError,
    IngestionError,
    InvalidArgumentError,
    TarclustError,
)
from .features import FeatureMatrix, FeatureVector, assemble_matrix, extract_features
from .io import PanelDataset, ingest_csv
from .pipeline import ClusterRun, cluster_series
from .series import TimeSeries, acf, ccf, pacf, stationarize
from .setar import SetarModel, fit_setar_grid, fit_setar_sequential, hansen_test
from .simlab import DGMS, DgmSpec, exact_grouping, run_scenario, simulate
from .spectral import ClusteringResult, affinity, kmeans, select_cluster_count, silhouette, spectral_embed

__version__ = "0.1.0"

__all__ = [
    "ArModel",
    "fit_ar",
    "select_ar_order",
    "PipelineConfig",
    "load_config",
    "ConfigError",
    "DegenerateInputError",
    "DegenerateSeriesError",
    "EstimationError",
    "FeatureExtractionError",
    "GenerationError",
    "IngestionError",
    "InvalidArgumentError",
    "TarclustError",
    "FeatureMatrix",
    "FeatureVector",
    "assemble_matrix",
    "extract_features",
    "PanelDataset",
    "ingest_csv",
    "ClusterRun",
    "cluster_series",
    "TimeSeries",
    "acf",
    "ccf",
    "pacf",
    "stationarize",
    "SetarModel",
    "fit_setar_grid",
    "fit_setar_sequential",
    "hansen_test",
    "DGMS",
    "DgmSpec",
    "exact_grouping",
    "run_scenario",
    "simulate",
    "ClusteringResult",
    "affinity",
    "kmeans",
    "select_cluster_count",
    "silhouette",
    "spectral_embed",
]
