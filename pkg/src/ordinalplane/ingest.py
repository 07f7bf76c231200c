"""
Strict parsers for the price and event CSV files.

Price files: header ``date,price``, rows ``YYYY-MM-DD,<decimal>``. Event
files: header ``date,label``. Both are UTF-8 with LF or CRLF line endings.
"""

from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import EmptyInputError, FormatError, OrderingError
from .ordinal import TimeSeries

__all__ = [
    "EventAnnotation",
    "ParsedPrices",
    "parse_price_csv",
    "parse_events_csv",
    "price_csv",
    "parse_iso_date",
]

log = logging.getLogger(__name__)

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}", re.ASCII)
_DECIMAL_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)", re.ASCII)
_MISSING = {"", "nan", "na", "n/a"}


@dataclass(frozen=True)
class EventAnnotation:
    date: date
    label: str


@dataclass(frozen=True)
class ParsedPrices:
    series: TimeSeries
    dropped_lines: tuple[int, ...] = ()

    @property
    def dropped_count(self) -> int:
        return len(self.dropped_lines)


def parse_iso_date(text: str, line: int | None = None) -> date:
    if not _DATE_RE.fullmatch(text):
        raise FormatError(f"expected a YYYY-MM-DD date, got {text!r}", line)
    try:
        return date.fromisoformat(text)
    except ValueError as exc:
        raise FormatError(f"invalid date {text!r}: {exc}", line) from None


def _rows(content: bytes | str, header: tuple[str, str]):
    if isinstance(content, bytes):
        try:
            text = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not valid UTF-8: {exc}") from None
    else:
        text = content
    if text.startswith("\ufeff"):
        text = text[1:]
    try:
        rows = list(csv.reader(io.StringIO(text, newline="")))
    except csv.Error as exc:
        raise FormatError(f"malformed CSV: {exc}") from None
    if not rows or tuple(c.strip() for c in rows[0]) != header:
        found = ",".join(rows[0]) if rows else ""
        raise FormatError(f"expected header {','.join(header)!r}, got {found!r}", 1)
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise FormatError(f"expected 2 fields, got {len(row)}", line)
        yield line, row[0].strip(), row[1]


def parse_price_csv(content: bytes | str) -> ParsedPrices:
    """
    Parse a ``date,price`` file into a dated series.

    Rows whose price is empty or NaN are dropped and reported in
    ``dropped_lines``. Dates must be strictly increasing.
    """
    dates: list[date] = []
    values: list[float] = []
    dropped: list[int] = []
    previous: date | None = None
    for line, date_text, price_text in _rows(content, ("date", "price")):
        day = parse_iso_date(date_text, line)
        if previous is not None and not day > previous:
            raise OrderingError(f"date {day} does not follow {previous}", line)
        previous = day
        price = price_text.strip()
        if price.lower() in _MISSING:
            log.warning("line %d: missing price for %s, row dropped", line, day)
            dropped.append(line)
            continue
        if not _DECIMAL_RE.fullmatch(price):
            raise FormatError(f"price {price!r} is not a plain decimal", line)
        value = float(price)
        if not np.isfinite(value):
            raise FormatError(f"price {price!r} overflows", line)
        dates.append(day)
        values.append(value)
    if not values:
        raise EmptyInputError("no price rows survived parsing")
    return ParsedPrices(TimeSeries(np.array(values), tuple(dates)), tuple(dropped))


def parse_events_csv(content: bytes | str) -> list[EventAnnotation]:
    """Parse a ``date,label`` file; events come back sorted by date.

    Rows with an empty date are skipped with a warning, so the shipped
    template (labels only) parses to an empty list until dates are filled in.
    """
    events = []
    for line, date_text, label in _rows(content, ("date", "label")):
        if not date_text:
            log.warning("line %d: event %r has no date, skipped", line, label)
            continue
        day = parse_iso_date(date_text, line)
        if not label.strip():
            raise FormatError("event label is empty", line)
        events.append(EventAnnotation(day, label))
    events.sort(key=lambda e: e.date)
    return events


def price_csv(series: TimeSeries) -> str:
    """Serialize a dated series as a price CSV that re-parses bit-identically."""
    if series.dates is None:
        raise FormatError("series has no dates")
    lines = ["date,price"]
    for day, value in zip(series.dates, series.values):
        lines.append(f"{day.isoformat()},{np.format_float_positional(value, unique=True, trim='-')}")
    return "\n".join(lines) + "\n"
