"""Exception hierarchy shared by the library and the CLI."""


class TarclustError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(TarclustError, ValueError):
    pass


class DegenerateSeriesError(TarclustError, ValueError):
    """Raised for zero-variance inputs where correlations are undefined."""


class DegenerateInputError(TarclustError, ValueError):
    """Raised when clustering input carries no usable geometry."""


class EstimationError(TarclustError, RuntimeError):
    pass


class FeatureExtractionError(TarclustError):
    """Estimation failure while building one series' feature vector."""

    def __init__(self, label, reason):
        self.label = label
        self.reason = str(reason)
        super().__init__(f"feature extraction failed for {label!r}: {reason}")


class GenerationError(TarclustError, RuntimeError):
    pass


class IngestionError(TarclustError):
    pass


class ConfigError(TarclustError, ValueError):
    pass
