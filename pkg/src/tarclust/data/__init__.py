"""Bundled synthetic commodity-like panel and example configs."""

from __future__ import annotations

from importlib import resources

import numpy as np

__all__ = ["LABELS", "BEFORE", "AFTER", "CHANGE_DATE", "make_commodity_panel", "commodity_panel_path", "example_path"]

LABELS = (
    "ALUMINUM",
    "COPPER",
    "GOLD",
    "LEAD",
    "NICKEL",
    "PLATINUM",
    "SILVER",
    "TIN",
    "ZINC",
    "CRUDE-BRENT",
    "CRUDE-DUBAI",
    "CRUDE-WTI",
    "CRUDE-PETRO",
    "NGAS-US",
)

# planted groups: persistent returns vs mean-reverting returns
_PERSISTENT_BEFORE = {"ALUMINUM", "COPPER", "LEAD", "NICKEL", "TIN", "ZINC", "CRUDE-WTI"}
_PERSISTENT_AFTER = {"ALUMINUM", "COPPER", "LEAD", "GOLD", "SILVER", "PLATINUM", "CRUDE-WTI"}
CHANGE_DATE = np.datetime64("2008-01-01")


def _groups(members):
    return tuple(sorted(l for l in LABELS if l in members)), tuple(sorted(l for l in LABELS if l not in members))


BEFORE = _groups(_PERSISTENT_BEFORE)
AFTER = _groups(_PERSISTENT_AFTER)


def _returns(phi: float, e: np.ndarray) -> np.ndarray:
    r = np.empty_like(e)
    prev = 0.0
    for t, v in enumerate(e):
        prev = phi * prev + v
        r[t] = prev
    return r


def make_commodity_panel(seed: int = 2016):
    """Monthly prices 1990-01 to 2014-12 for the bundled labels.

    Log returns follow an AR(1) with coefficient 0.75 for the persistent
    group and -0.6 for the rest; membership changes from January 2008.
    Returns ``(dates, prices)`` with ``prices`` of shape (300, 14).
    """
    dates = np.arange(np.datetime64("1990-01"), np.datetime64("2015-01")).astype("datetime64[D]")
    rng = np.random.default_rng(seed)
    after = dates >= CHANGE_DATE
    prices = np.empty((dates.size, len(LABELS)))
    for j, lab in enumerate(LABELS):
        e = 0.02 * rng.standard_normal(dates.size + 100)
        phi_b = 0.75 if lab in _PERSISTENT_BEFORE else -0.6
        phi_a = 0.75 if lab in _PERSISTENT_AFTER else -0.6
        rb = _returns(phi_b, e)[100:]
        ra = _returns(phi_a, e)[100:]
        r = np.where(after, ra, rb)
        prices[:, j] = 100.0 * np.exp(np.cumsum(r))
    return dates, prices


def commodity_panel_path():
    """Path of the bundled CSV (header ``date`` plus one column per label)."""
    return resources.files(__name__).joinpath("commodity_panel.csv")


def example_path(name: str):
    return resources.files(__name__).joinpath(name)
