"""Daily precipitation ingestion, wet-period segmentation, maxima extraction.

A wet period is a maximal run of consecutive days whose precipitation
exceeds the wet threshold (default 0: any positive reading is wet).  Runs
are bounded by dry days; a day marked missing also terminates a run.  The
per-period maxima, censored by a minimum period length h, form the sample
the estimators in :mod:`wetmax.estimation` consume, and the period lengths
feed the negative binomial duration fit.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .estimation import MaximaSample


class CsvFormatError(ValueError):
    """Input file does not conform to the documented CSV layout."""


class EmptySampleError(ValueError):
    """Censoring left no wet period to take a maximum from."""


@dataclass(frozen=True, eq=False)
class PrecipSeries:
    """Ordered daily precipitation record; NaN marks an explicitly missing day."""

    values: np.ndarray
    dates: Optional[List[str]] = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("precipitation series must be nonempty")
        observed = arr[~np.isnan(arr)]
        if np.any(observed < 0.0) or np.any(np.isinf(observed)):
            raise ValueError("precipitation values must be finite and >= 0")
        if self.dates is not None and len(self.dates) != arr.size:
            raise ValueError("dates and values must have equal length")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(eq=False)
class WetPeriods:
    """Segmented wet spells, in series order, plus any segmentation warnings."""

    periods: List[np.ndarray]
    warnings: List[str] = field(default_factory=list)

    @property
    def lengths(self) -> List[int]:
        return [int(len(p)) for p in self.periods]

    @property
    def m(self) -> int:
        return len(self.periods)

    def to_json_dict(self) -> dict:
        return {
            "periods": [[float(v) for v in p] for p in self.periods],
            "lengths": self.lengths,
        }


@dataclass(frozen=True)
class CensoringSpec:
    """Minimum wet-period length (days) for a period's maximum to be kept."""

    h: int = 1

    def __post_init__(self):
        h = int(self.h)
        if h < 1 or h != self.h:
            raise ValueError(f"h must be an integer >= 1, got {self.h!r}")
        object.__setattr__(self, "h", h)


def segment(
    series: PrecipSeries,
    wet_threshold: float = 0.0,
    missing_policy: str = "split",
) -> WetPeriods:
    """Split the series into maximal runs of days above the wet threshold.

    Days at or below the threshold are dry.  A missing day always ends the
    current run; under the default ``split`` policy a missing day falling
    between two wet days is recorded as a warning, under ``dry`` it is
    treated as an ordinary dry day silently.
    """
    if wet_threshold < 0.0:
        raise ValueError(f"wet threshold must be >= 0, got {wet_threshold!r}")
    if missing_policy not in ("split", "dry"):
        raise ValueError(f"missing policy must be 'split' or 'dry', got {missing_policy!r}")
    values = series.values
    missing = np.isnan(values)
    wet = ~missing & (values > wet_threshold)

    periods: List[np.ndarray] = []
    warnings: List[str] = []
    start = None
    for i in range(values.size + 1):
        is_wet = i < values.size and wet[i]
        if is_wet and start is None:
            start = i
        elif not is_wet and start is not None:
            periods.append(values[start:i].copy())
            start = None
        if (
            missing_policy == "split"
            and i < values.size
            and missing[i]
            and i > 0
            and wet[i - 1]
            and i + 1 < values.size
            and wet[i + 1]
        ):
            warnings.append(f"missing day at index {i} split a wet run")
    return WetPeriods(periods=periods, warnings=warnings)


def durations(wp: WetPeriods) -> List[int]:
    """Lengths of the wet periods, in days, in series order."""
    return wp.lengths


def build_maxima(wp: WetPeriods, censoring: CensoringSpec | int = CensoringSpec(1)) -> MaximaSample:
    """Per-period maxima of every wet period at least h days long, in order."""
    spec = censoring if isinstance(censoring, CensoringSpec) else CensoringSpec(censoring)
    kept = [p for p in wp.periods if len(p) >= spec.h]
    if not kept:
        longest = max(wp.lengths, default=0)
        raise EmptySampleError(
            f"no wet period of length >= {spec.h} days "
            f"(longest available: {longest} days)"
        )
    return MaximaSample(np.array([float(np.max(p)) for p in kept]))


def ingest_csv(
    path: str,
    missing_marker: str = "NA",
) -> PrecipSeries:
    """Read a daily precipitation series from ``path`` ('-' for stdin).

    Accepted layouts: one value per row, or two columns ``date,value``.
    A header row is skipped if its value cell does not parse.  Cells equal
    to ``missing_marker`` become missing days.  Malformed or negative cells
    raise :class:`CsvFormatError` naming the offending line.
    """
    if path == "-":
        rows = list(csv.reader(sys.stdin))
    else:
        try:
            with open(path, newline="") as handle:
                rows = list(csv.reader(handle))
        except OSError as exc:
            raise CsvFormatError(f"cannot read {path!r}: {exc}") from exc
    if not rows:
        raise CsvFormatError(f"{path!r} is empty")

    def parse_cell(cell: str, line_no: int) -> float:
        cell = cell.strip()
        if cell == missing_marker:
            return float("nan")
        try:
            value = float(cell)
        except ValueError:
            raise CsvFormatError(f"line {line_no}: cannot parse value {cell!r}") from None
        if not np.isfinite(value):
            raise CsvFormatError(f"line {line_no}: value {cell!r} is not finite")
        if value < 0.0:
            raise CsvFormatError(f"line {line_no}: negative precipitation {cell!r}")
        return value

    first = rows[0]
    if len(first) not in (1, 2):
        raise CsvFormatError(f"line 1: expected 1 or 2 columns, got {len(first)}")
    two_columns = len(first) == 2

    start = 0
    try:
        parse_cell(first[1] if two_columns else first[0], 1)
    except CsvFormatError:
        start = 1  # header row

    values: List[float] = []
    dates: List[str] = []
    for offset, row in enumerate(rows[start:], start=start + 1):
        if len(row) != len(first):
            raise CsvFormatError(
                f"line {offset}: expected {len(first)} column(s), got {len(row)}"
            )
        if two_columns:
            dates.append(row[0].strip())
            values.append(parse_cell(row[1], offset))
        else:
            values.append(parse_cell(row[0], offset))
    if not values:
        raise CsvFormatError(f"{path!r} contains a header but no data rows")
    return PrecipSeries(np.array(values), dates=dates if two_columns else None)
