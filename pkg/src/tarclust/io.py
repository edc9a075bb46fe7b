"""Reading panels of dated series from CSV files."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import IngestionError, InvalidArgumentError
from .series import TimeSeries

__all__ = ["PanelDataset", "ingest_csv"]


@dataclass(frozen=True)
class PanelDataset:
    """Labelled series sharing one date axis."""

    series: tuple
    timestamps: np.ndarray
    source: dict = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.series]

    def __len__(self) -> int:
        return len(self.series)

    def select(self, labels: Sequence[str]) -> "PanelDataset":
        by = {s.label: s for s in self.series}
        missing = [l for l in labels if l not in by]
        if missing:
            raise InvalidArgumentError(f"unknown series: {', '.join(missing)}")
        return PanelDataset(tuple(by[l] for l in labels), self.timestamps, dict(self.source))


def _parse_date(text: str, row: int) -> np.datetime64:
    try:
        return np.datetime64(text.strip(), "D")
    except ValueError:
        raise IngestionError(f"row {row}: malformed date {text!r}") from None


def ingest_csv(
    path, date_column: str = "date", value_columns: Optional[Sequence[str]] = None
) -> PanelDataset:
    """Load a CSV with a header row, an ISO-8601 date column and numeric columns.

    ``value_columns=None`` takes every column except the date. Row numbers in
    error messages count the header as row 1.

    Raises
    ------
    InvalidArgumentError
        When an explicit, empty column selection is given.
    IngestionError
        Missing file, unknown or duplicate columns, malformed or non-increasing
        dates, missing or non-numeric cells.
    """
    if value_columns is not None and len(value_columns) == 0:
        raise InvalidArgumentError("no value columns selected")
    p = Path(path)
    if not p.is_file():
        raise IngestionError(f"no such file: {p}")
    try:
        with p.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError, csv.Error) as exc:
        raise IngestionError(f"cannot read {p}: {exc}") from exc
    if not rows:
        raise IngestionError(f"{p} is empty")
    header = [h.strip() for h in rows[0]]
    dupes = sorted({h for h in header if header.count(h) > 1})
    if dupes:
        raise IngestionError(f"duplicate column labels: {', '.join(dupes)}")
    if date_column not in header:
        raise IngestionError(f"date column {date_column!r} not in header")
    if value_columns is None:
        value_columns = [h for h in header if h != date_column]
        if not value_columns:
            raise InvalidArgumentError("file has no value columns")
    value_columns = list(value_columns)
    if len(set(value_columns)) != len(value_columns):
        raise IngestionError("duplicate labels in the column selection")
    unknown = [c for c in value_columns if c not in header]
    if unknown:
        raise IngestionError(f"columns not in file: {', '.join(unknown)}")

    di = header.index(date_column)
    cols = [header.index(c) for c in value_columns]
    body = rows[1:]
    if not body:
        raise IngestionError(f"{p} has no data rows")
    dates = []
    values = np.empty((len(body), len(cols)))
    for r, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise IngestionError(f"row {r}: expected {len(header)} cells, found {len(row)}")
        dates.append(_parse_date(row[di], r))
        for j, (c, name) in enumerate(zip(cols, value_columns)):
            cell = row[c].strip()
            if cell == "":
                raise IngestionError(f"row {r}, column {name}: missing value")
            try:
                v = float(cell)
            except ValueError:
                raise IngestionError(f"row {r}, column {name}: non-numeric value {cell!r}") from None
            if not math.isfinite(v):
                raise IngestionError(f"row {r}, column {name}: missing value ({cell})")
            values[r - 2, j] = v
    ts = np.array(dates, dtype="datetime64[D]")
    bad = np.flatnonzero(np.diff(ts) <= np.timedelta64(0, "D"))
    if bad.size:
        raise IngestionError(f"row {int(bad[0]) + 3}: dates are not strictly increasing")
    series = tuple(
        TimeSeries(values[:, j], label=name, timestamps=ts) for j, name in enumerate(value_columns)
    )
    return PanelDataset(series, ts, {"path": str(p), "date_column": date_column})
