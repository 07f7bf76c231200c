"""Sliding-window analysis: plan, quantify each window, group for display."""

from __future__ import annotations

import io
from dataclasses import dataclass
from datetime import date
from typing import Sequence, TypeVar

import numpy as np

from ._tables import flag, optional_date, read_table
from .errors import InsufficientDataError, InvalidInputError
from .ordinal import (
    OrdinalConfig,
    OrdinalDistribution,
    SeriesLike,
    TimeSeries,
    ordinal_symbols,
)
from .quantifiers import QuantifierPoint, quantify

__all__ = [
    "WindowPlan",
    "WindowResult",
    "WindowRow",
    "plan_windows",
    "analyze_windows",
    "group_windows",
    "windows_to_csv",
    "read_windows_csv",
    "WINDOWS_HEADER",
]

WINDOWS_HEADER = (
    "window_index",
    "start_offset",
    "start_date",
    "end_date",
    "h",
    "c",
    "low_sample_warning",
)


@dataclass(frozen=True)
class WindowPlan:
    window_length: int
    step: int
    series_length: int
    starts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.starts)


@dataclass(frozen=True)
class WindowResult:
    window_index: int
    start_offset: int
    point: QuantifierPoint
    low_sample_warning: bool = False
    start_date: date | None = None
    end_date: date | None = None


def plan_windows(series_length: int, window_length: int = 300, step: int = 20) -> WindowPlan:
    """
    Start offsets ``0, step, 2*step, ...`` of every full window.

    Trailing data shorter than a full window is discarded, so the count is
    ``(series_length - window_length) // step + 1``.
    """
    if window_length < 2:
        raise InvalidInputError(f"window length must be >= 2, got {window_length}")
    if step < 1:
        raise InvalidInputError(f"step must be >= 1, got {step}")
    if series_length < window_length:
        raise InsufficientDataError(
            f"series of length {series_length} is shorter than one window "
            f"of {window_length}",
            required=window_length,
        )
    starts = tuple(range(0, series_length - window_length + 1, step))
    return WindowPlan(window_length, step, series_length, starts)


def analyze_windows(
    series: SeriesLike, plan: WindowPlan, config: OrdinalConfig = OrdinalConfig()
) -> list[WindowResult]:
    """Quantifiers of every window in ``plan``, ordered by window index.

    Patterns are computed once for the whole series; a window at ``s`` uses
    exactly the vectors that start in ``[s, s + N - (D-1)*tau)``, i.e. the
    vectors lying entirely inside ``[s, s + N)``.
    """
    n = len(series) if isinstance(series, TimeSeries) else np.asarray(series).size
    if n != plan.series_length:
        raise InvalidInputError(
            f"plan was made for length {plan.series_length}, series has length {n}"
        )
    per_window = config.n_vectors(plan.window_length)
    if per_window < 1:
        raise InsufficientDataError(
            f"window of {plan.window_length} is too short for D={config.dimension}, "
            f"tau={config.delay}",
            required=config.span,
        )
    symbols, ties = ordinal_symbols(series, config)
    m = config.n_patterns
    onehot = np.zeros((symbols.size + 1, m), dtype=np.int64)
    onehot[np.arange(1, symbols.size + 1), symbols] = 1
    cumulative = np.cumsum(onehot, axis=0)
    tie_cum = np.concatenate([[0], np.cumsum(ties)])

    dates = series.dates if isinstance(series, TimeSeries) else None
    results = []
    for index, start in enumerate(plan.starts):
        stop = start + per_window
        counts = cumulative[stop] - cumulative[start]
        dist = OrdinalDistribution(
            config, counts, per_window, counts / per_window,
            int(tie_cum[stop] - tie_cum[start]),
        )
        results.append(
            WindowResult(
                window_index=index,
                start_offset=start,
                point=quantify(dist),
                low_sample_warning=dist.low_sample,
                start_date=None if dates is None else dates[start],
                end_date=None if dates is None else dates[start + plan.window_length - 1],
            )
        )
    return results


T = TypeVar("T")


def group_windows(results: Sequence[T], group_size: int = 20) -> list[list[T]]:
    """Consecutive chunks of ``group_size``; the last chunk holds the remainder."""
    if group_size < 1:
        raise InvalidInputError(f"group size must be >= 1, got {group_size}")
    return [list(results[i : i + group_size]) for i in range(0, len(results), group_size)]


def windows_to_csv(results: Sequence[WindowResult]) -> str:
    buf = io.StringIO()
    buf.write(",".join(WINDOWS_HEADER) + "\n")
    for r in results:
        buf.write(
            f"{r.window_index},{r.start_offset},"
            f"{r.start_date.isoformat() if r.start_date else ''},"
            f"{r.end_date.isoformat() if r.end_date else ''},"
            f"{r.point.entropy_normalized:.17g},{r.point.complexity:.17g},"
            f"{'true' if r.low_sample_warning else 'false'}\n"
        )
    return buf.getvalue()


@dataclass(frozen=True)
class WindowRow:
    """A row read back from ``windows.csv``."""

    window_index: int
    start_offset: int
    start_date: date | None
    end_date: date | None
    h: float
    c: float
    low_sample_warning: bool


def read_windows_csv(text: str) -> list[WindowRow]:
    converters = {
        "window_index": int,
        "start_offset": int,
        "start_date": optional_date,
        "end_date": optional_date,
        "h": float,
        "c": float,
        "low_sample_warning": flag,
    }
    return [WindowRow(**row) for row in read_table(text, converters, "windows")]
