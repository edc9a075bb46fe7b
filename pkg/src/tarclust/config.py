"""Pipeline configuration and its YAML file form."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .errors import ConfigError

__all__ = ["PipelineConfig", "Period", "RollingWindow", "load_config", "CRISIS_PERIODS"]


@dataclass(frozen=True)
class Period:
    start: str
    end: str
    name: Optional[str] = None

    @property
    def title(self) -> str:
        return self.name or f"{self.start}..{self.end}"


@dataclass(frozen=True)
class RollingWindow:
    length: int
    step: int


# before the 2008 crisis, after it, and the whole span
CRISIS_PERIODS = (
    Period("1990-01-01", "2007-12-31", "1990-2007"),
    Period("2010-01-01", "2014-12-31", "2010-2014"),
    Period("1990-01-01", "2014-12-31", "1990-2014"),
)

_CRITERIA = ("aic", "bic", "hqic")
_MODES = ("log_diff", "diff", "none")


@dataclass(frozen=True)
class PipelineConfig:
    k: int = 3
    p_max: int = 3
    p_ar_max: int = 12
    d_max: int = 3
    l: int = 12
    significance_level: float = 0.05
    sigma: Union[str, float] = "rms"
    c_range: tuple = (2, 15)
    restarts: int = 20
    bootstrap_reps: int = 500
    seed: int = 0
    stationarize_mode: str = "log_diff"
    criterion: str = "bic"
    setar_method: str = "sequential"
    standardize_rows: bool = False
    hansen: bool = True
    window: Union[None, tuple, RollingWindow] = None

    def __post_init__(self):
        for name in ("k", "p_max", "p_ar_max", "d_max", "l", "restarts", "bootstrap_reps"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        if not 0 < self.significance_level < 1:
            raise ConfigError("significance_level must lie in (0, 1)")
        if self.sigma not in ("auto", "rms"):
            try:
                sig = float(self.sigma)
            except (TypeError, ValueError):
                raise ConfigError(f"sigma must be 'auto', 'rms' or a positive number, got {self.sigma!r}")
            if not sig > 0:
                raise ConfigError("sigma must be positive")
            object.__setattr__(self, "sigma", sig)
        cr = tuple(int(c) for c in self.c_range)
        if len(cr) != 2 or cr[0] < 2 or cr[1] < cr[0]:
            raise ConfigError(f"c_range must be [c_min, c_max] with 2 <= c_min <= c_max, got {self.c_range!r}")
        object.__setattr__(self, "c_range", cr)
        if self.criterion not in _CRITERIA:
            raise ConfigError(f"criterion must be one of {_CRITERIA}")
        if self.stationarize_mode not in _MODES:
            raise ConfigError(f"stationarize_mode must be one of {_MODES}")
        if self.setar_method not in ("grid", "sequential"):
            raise ConfigError("setar_method must be 'grid' or 'sequential'")
        if self.bootstrap_reps < 100:
            raise ConfigError("bootstrap_reps must be at least 100")
        object.__setattr__(self, "window", _parse_window(self.window))

    @property
    def max_model_lag(self) -> int:
        return max(self.p_max, self.d_max)

    @property
    def min_length(self) -> int:
        """Shortest series the pipeline accepts."""
        return max(10 * self.max_model_lag, self.l + 1, self.p_ar_max + 3)

    @property
    def feature_dim(self) -> int:
        return self.k * self.p_max + self.p_ar_max + 5 * self.l

    def replace(self, **changes) -> "PipelineConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["c_range"] = list(self.c_range)
        w = self.window
        if isinstance(w, RollingWindow):
            d["window"] = {"length": w.length, "step": w.step}
        elif w is not None:
            d["window"] = [dataclasses.asdict(p) for p in w]
        return d


def _parse_window(w):
    if w is None or isinstance(w, RollingWindow):
        return w
    if w == "crisis":
        return CRISIS_PERIODS
    if isinstance(w, dict):
        if "periods" in w:
            return _parse_window(w["periods"])
        try:
            rw = RollingWindow(int(w["length"]), int(w["step"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigError("rolling window needs integer 'length' and 'step'")
        if rw.length < 2 or rw.step < 1:
            raise ConfigError("rolling window length must be >= 2 and step >= 1")
        return rw
    if isinstance(w, (list, tuple)):
        periods = []
        for p in w:
            if isinstance(p, Period):
                periods.append(p)
            elif isinstance(p, dict) and "start" in p and "end" in p:
                periods.append(Period(str(p["start"]), str(p["end"]), p.get("name")))
            elif isinstance(p, (list, tuple)) and len(p) == 2:
                periods.append(Period(str(p[0]), str(p[1])))
            else:
                raise ConfigError(f"cannot read period {p!r}")
        if not periods:
            raise ConfigError("window period list is empty")
        return tuple(periods)
    raise ConfigError(f"cannot read window {w!r}")


_FIELDS = {f.name for f in dataclasses.fields(PipelineConfig)}


def config_from_mapping(data: dict, base: Optional[PipelineConfig] = None) -> PipelineConfig:
    unknown = set(data) - _FIELDS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    base = base or PipelineConfig()
    return base.replace(**data)


def read_yaml(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping")
    return data


def load_config(path=None, overrides: Optional[dict] = None, section: str = "pipeline") -> PipelineConfig:
    """Config from a YAML file (``pipeline:`` section or top level) plus overrides.

    Override values win over file values; ``None`` overrides are ignored.
    """
    data: dict[str, Any] = {}
    if path is not None:
        raw = read_yaml(path)
        data = dict(raw.get(section, raw)) if section in raw else {
            k: v for k, v in raw.items() if k in _FIELDS
        }
    for k, v in (overrides or {}).items():
        if v is not None:
            data[k] = v
    try:
        return config_from_mapping(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
