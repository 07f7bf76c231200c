"""Reading the package's own CSV exports back, with column-specific errors."""

from __future__ import annotations

import csv
import io
from datetime import date
from typing import Any, Callable, Mapping

from .errors import SchemaError


def optional_date(text: str) -> date | None:
    return date.fromisoformat(text) if text else None


def flag(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


def read_table(
    text: str, converters: Mapping[str, Callable[[str], Any]], name: str
) -> list[dict[str, Any]]:
    reader = csv.DictReader(io.StringIO(text))
    columns = reader.fieldnames or ()
    for column in converters:
        if column not in columns:
            raise SchemaError(f"{name} CSV is missing column {column!r}", column)
    rows = []
    for line, rec in enumerate(reader, start=2):
        row = {}
        for column, convert in converters.items():
            try:
                row[column] = convert(rec[column])
            except (TypeError, ValueError) as exc:
                raise SchemaError(
                    f"{name} CSV line {line}: bad value in column {column!r}", column
                ) from exc
        rows.append(row)
    return rows
